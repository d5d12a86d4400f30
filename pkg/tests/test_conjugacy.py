import numpy as np
import pytest

from pslrack.conjugacy import (
    ClassDescriptor,
    DisjointClassError,
    all_classes,
    all_pgl_classes,
    centralizer,
    class_elements,
    class_of,
    count_classes_of_order,
    element_classes,
    is_real,
    pgl_class_of,
    pgl_restrict,
    power_class,
    psl_table,
)
from pslrack.field import field_of_order
from pslrack.matrices import element, group_order, matrix_group
from pslrack.racks import conjugation_rack

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13]


def test_class_of_examples():
    F7 = field_of_order(7)
    assert class_of(element("PSL", F7, 2, 0, 0, 1)) == ClassDescriptor(F7, "split", 2)
    F5 = field_of_order(5)
    assert class_of(element("PSL", F5, 1, 1, 0, 1)) == ClassDescriptor(F5, "unipotent", 1)
    assert class_of(element("PSL", F5, 1, 0, 0, 1)).kind == "identity"


def test_small_tables():
    q2 = [(cd.size, cd.element_order) for cd in all_classes(field_of_order(2))]
    assert q2 == [(1, 1), (3, 2), (2, 3)]
    q3 = [(cd.size, cd.element_order) for cd in all_classes(field_of_order(3))]
    assert q3 == [(1, 1), (4, 3), (4, 3), (3, 2)]
    assert sorted(cd.size for cd in all_classes(field_of_order(5))) == [1, 12, 12, 15, 20]


@pytest.mark.parametrize("q", SMALL_Q)
def test_class_partition(q):
    F = field_of_order(q)
    classes = all_classes(F)
    labels = element_classes(F)
    assert sum(cd.size for cd in classes) == group_order("PSL", q)
    for cd in classes:
        el = class_elements(cd)
        assert el.size == cd.size
        assert all(labels[int(i)] == cd for i in el)


@pytest.mark.parametrize("q", SMALL_Q)
def test_same_size_same_type(q):
    by_size = {}
    for cd in all_classes(field_of_order(q))[1:]:
        by_size.setdefault(cd.size, set()).add(cd.is_semisimple)
    assert all(len(v) == 1 for v in by_size.values())


def test_reality_examples():
    assert not is_real(ClassDescriptor(field_of_order(7), "unipotent", 1))
    assert is_real(ClassDescriptor(field_of_order(5), "unipotent", 1))
    assert all(is_real(cd) for cd in all_classes(field_of_order(13)) if cd.is_semisimple)


def test_power_class_examples():
    F = field_of_order(7)
    nonsplit4 = next(cd for cd in all_classes(F) if cd.kind == "nonsplit" and cd.element_order == 4)
    assert power_class(nonsplit4, 3) == nonsplit4
    assert power_class(nonsplit4, 1) == nonsplit4
    assert power_class(nonsplit4, 4).kind == "identity"
    F13 = field_of_order(13)
    a = ClassDescriptor(F13, "split", 4)
    assert power_class(a, 2).param in (F13.pow(4, 2), F13.inv(F13.pow(4, 2)))


@pytest.mark.parametrize("q", SMALL_Q)
def test_power_fixed_iff(q):
    """power_class(cd, m) == cd exactly when o | m-1 or o | m+1."""
    for cd in all_classes(field_of_order(q)):
        if not cd.is_semisimple:
            continue
        o = cd.element_order
        for m in range(1, o):
            if np.gcd(m, o) == 1:
                assert (power_class(cd, m) == cd) == ((m - 1) % o == 0 or (m + 1) % o == 0)


def test_count_examples():
    assert count_classes_of_order(field_of_order(13), 7) == 3
    assert count_classes_of_order(field_of_order(9), 3) == 2
    assert count_classes_of_order(field_of_order(8), 2) == 1
    assert count_classes_of_order(field_of_order(13), 5) == 0
    assert count_classes_of_order(field_of_order(13), 1) == 1


def test_centralizer_examples():
    F5 = field_of_order(5)
    assert len(centralizer(element("PSL", F5, 1, 0, 0, 1))) == 60
    s = element("PSL", F5, 0, 1, 4, 0)
    assert len(centralizer(s)) == 4
    g = element("PSL", F5, 0, 4, 1, 1)  # trace 1: order 3
    cd = class_of(g)
    assert cd.element_order == 3
    inside = {h for h in centralizer(g) if class_of(h) == cd}
    assert inside == {g, g.inverse()}


def test_pgl_restriction():
    F7 = field_of_order(7)
    unip = next(c for c in all_pgl_classes(F7) if c.kind == "unipotent")
    parts = pgl_restrict(unip)
    assert len(parts) == 2 and parts[0].param == 1 and not F7.is_square(parts[1].param)
    F8 = field_of_order(8)
    unip8 = next(c for c in all_pgl_classes(F8) if c.kind == "unipotent")
    assert len(pgl_restrict(unip8)) == 1
    with pytest.raises(DisjointClassError):
        pgl_restrict(pgl_class_of(element("PGL", F7, 3, 0, 0, 1)))


@pytest.mark.parametrize("q", [5, 7, 9])
def test_pgl_class_sizes(q):
    assert sum(c.size for c in all_pgl_classes(field_of_order(q))) == group_order("PGL", q)


@pytest.mark.parametrize("q", SMALL_Q)
def test_abelian_classes_only_for_tiny_q(q):
    T = psl_table(field_of_order(q))
    abelian = [cd for cd in all_classes(field_of_order(q))[1:]
               if conjugation_rack(T, class_elements(cd)).is_abelian()]
    if q == 2:
        assert [cd.element_order for cd in abelian] == [3]
    elif q == 3:
        assert [cd.element_order for cd in abelian] == [2]
    else:
        assert abelian == []


def test_descriptor_text():
    F = field_of_order(7)
    cd = ClassDescriptor(F, "split", 2)
    assert cd.class_id == "split:a=2" and str(cd) == "O_{2,2}"
    assert matrix_group("PSL", F).index(cd.representative()) in class_elements(cd)
