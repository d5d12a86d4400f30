from collections import Counter

import numpy as np
import pytest

from pslrack.field import field_of_order
from pslrack.matrices import matrix_group
from pslrack.subgroups import (
    DicksonError,
    DicksonLabel,
    LatticeBoundError,
    aliases,
    all_subgroups,
    borel_subgroup,
    canonical_label,
    conjugate_into,
    dickson_classify,
    is_join_closed,
    label_valid,
    unipotent_subgroup,
)

# subgroup counts from the join-closure enumeration
LATTICE_SIZES = {2: 6, 3: 10, 4: 59, 5: 59, 7: 179, 8: 386, 9: 501}


@pytest.mark.parametrize("q", sorted(LATTICE_SIZES))
def test_lattice_sizes(q):
    lat = all_subgroups(field_of_order(q))
    assert lat.count == LATTICE_SIZES[q]
    assert len({s.elements.tobytes() for s in lat.subgroups}) == lat.count


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_lattice_is_complete_and_labelled(q):
    lat = all_subgroups(field_of_order(q))
    assert is_join_closed(lat)
    G = lat.group
    for rec in lat.representatives:
        assert G.is_subgroup(rec.elements)
        assert rec.label.order == rec.order
        assert label_valid(rec.label, q)
        # the canonical choice is stable: exactly one label comes out
        assert canonical_label(rec.label, q) == rec.label


def test_q5_label_counts():
    counts = all_subgroups(field_of_order(5)).label_counts()
    assert counts == Counter({"C1": 1, "C2": 15, "C3": 10, "D4": 5, "E(5^1)": 6, "D6": 10,
                              "A4": 5, "A⋊C(5,2)": 6, "A5": 1})


def test_q5_menu_items_all_occur():
    lat = all_subgroups(field_of_order(5))
    orders = {r.order for r in lat.representatives}
    assert {2, 3, 5, 4, 6, 10, 12, 60} <= orders


def test_examples():
    for q in (4, 5, 7, 8, 9):
        F = field_of_order(q)
        G = matrix_group("PSL", F).table
        p, n = F.p, F.n
        assert dickson_classify(G, unipotent_subgroup(F), q) == canonical_label(DicksonLabel("E", (p, n)), q)
        B = borel_subgroup(F)
        e = 2 if q % 2 else 1
        assert B.size == q * (q - 1) // e
        if (q - 1) // e > 1:
            assert dickson_classify(G, B, q) == canonical_label(DicksonLabel("AC", (q, (q - 1) // e)), q)
    lat = all_subgroups(field_of_order(5))
    assert {str(r.label) for r in lat.representatives if r.order == 12} == {"A4"}


def test_pgl3_inside_psl9():
    lat = all_subgroups(field_of_order(9))
    s4 = [r for r in lat.representatives if r.order == 24]
    assert s4 and all(str(r.label) == "S4" for r in s4)
    assert DicksonLabel("PGL", (3,)) in aliases(DicksonLabel("S4"))
    assert label_valid(DicksonLabel("PGL", (3,)), 9)


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_ac_subgroups_are_triangular(q):
    F = field_of_order(q)
    lat = all_subgroups(F)
    B = borel_subgroup(F)
    for r in lat.representatives:
        if r.label.kind == "AC":
            assert conjugate_into(lat.group, r.elements, B) is not None


def test_invalid_labels():
    assert not label_valid(DicksonLabel("S4"), 5)
    assert label_valid(DicksonLabel("S4"), 7)
    assert not label_valid(DicksonLabel("A4"), 8)
    with pytest.raises(DicksonError):
        canonical_label(DicksonLabel("S4"), 5)


def test_bound():
    with pytest.raises(LatticeBoundError):
        all_subgroups(field_of_order(13))


def test_dihedral_sizes():
    """The involutions of a dihedral subgroup D(2n) number n, or n+1 for even n."""
    lat = all_subgroups(field_of_order(11))
    G = lat.group
    orders = G.element_orders
    for r in lat.representatives:
        if r.label.kind == "D":
            n = r.order // 2
            k = int((orders[r.elements] == 2).sum())
            assert k == (n + 1 if n % 2 == 0 else n)
