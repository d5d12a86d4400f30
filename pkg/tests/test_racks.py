import itertools

import numpy as np
import pytest

from pslrack.conjugacy import ClassDescriptor, all_classes, class_elements, psl_table
from pslrack.field import field_of_order
from pslrack.racks import (
    FiniteRack,
    RackError,
    conjugation_rack,
    dihedral_rack,
    find_rack_embedding,
    is_rack_homomorphism,
    racks_isomorphic,
    trivial_rack,
)


def class_rack(q, pred):
    F = field_of_order(q)
    cd = next(c for c in all_classes(F) if pred(c))
    return conjugation_rack(psl_table(F), class_elements(cd))


def involutions(q):
    return class_rack(q, lambda c: c.element_order == 2)


def test_closure_examples():
    R = involutions(5)
    assert list(R.closure([3])) == [3]
    assert R.closure(range(R.size)).size == R.size
    sizes = set()
    for x, y in itertools.combinations(range(R.size), 2):
        if R.op[x, y] != y:
            sizes.add(R.closure([x, y]).size)
    assert sizes == {3, 5}
    with pytest.raises(RackError):
        R.closure([])


def test_closure_is_monotone_and_idempotent():
    R = involutions(7)
    rng = np.random.default_rng(1)
    for _ in range(30):
        a = rng.choice(R.size, size=2, replace=False)
        b = np.append(a, rng.integers(R.size))
        ca, cb = R.closure(a), R.closure(b)
        assert set(ca) <= set(cb)
        assert np.array_equal(R.closure(ca), ca)
        # finite closure is closed under inverse translations too
        inv = np.argsort(R.op[ca][:, ca], axis=1)
        assert set(ca[inv.ravel()]) <= set(ca)


def test_abelian_examples():
    assert class_rack(2, lambda c: c.element_order == 3).is_abelian()
    assert class_rack(3, lambda c: c.element_order == 2).is_abelian()
    for q in (4, 5, 7, 8, 9):
        assert not class_rack(q, lambda c: c.kind == "unipotent").is_abelian()


def test_minimality_examples():
    assert class_rack(5, lambda c: c.kind == "unipotent").is_minimal_nonabelian()
    assert not class_rack(9, lambda c: c.kind == "unipotent").is_minimal_nonabelian()
    assert class_rack(8, lambda c: c.element_order == 3).is_minimal_nonabelian()


def test_pair_criterion_matches_definition():
    racks = [dihedral_rack(n) for n in range(1, 13)] + [trivial_rack(4), involutions(3),
                                                       class_rack(2, lambda c: c.element_order == 2)]
    racks += [class_rack(4, lambda c: c.element_order == 3)]
    for R in racks:
        if R.size <= 12:
            assert R.is_minimal_nonabelian() == R.is_minimal_nonabelian_bruteforce()
    # dihedral racks of prime order are minimal; composite are not
    assert dihedral_rack(7).is_minimal_nonabelian()
    assert not dihedral_rack(9).is_minimal_nonabelian()


def test_axioms():
    for R in (dihedral_rack(6), trivial_rack(3), involutions(7)):
        assert R.check_axioms()
    bad = FiniteRack(np.array([[1, 1], [0, 1]]))
    assert not bad.check_axioms()


def test_powerset_counts():
    assert len(trivial_rack(5).enumerate_subracks(mode="powerset")) == 31
    assert len(trivial_rack(1).enumerate_subracks()) == 1
    R = involutions(5)
    subs = R.enumerate_subracks(mode="powerset")
    # singletons, 15 pairs of commuting involutions, 5 triples of V4,
    # 10 reflection triples of S3, 6 reflection classes of D10, the whole class
    assert sorted(s.size for s in subs) == [1] * 15 + [2] * 15 + [3] * 15 + [5] * 6 + [15]


def test_seeded_mode_finds_generated_subracks():
    R = involutions(5)
    full = {s.tobytes() for s in R.enumerate_subracks(mode="powerset")}
    seeded = R.enumerate_subracks(mode="seeded")
    assert all(s.tobytes() in full for s in seeded)
    assert {s.size for s in seeded} == {1, 2, 3, 5, 15}


def test_embeddings():
    s3 = involutions(2)
    R = involutions(7)
    f = find_rack_embedding(s3, R)
    assert f is not None and is_rack_homomorphism(s3, R, f) and len(set(f.values())) == 3
    assert find_rack_embedding(trivial_rack(1), R) is not None
    assert find_rack_embedding(dihedral_rack(3), trivial_rack(5)) is None
    assert racks_isomorphic(dihedral_rack(3), s3)
    assert not racks_isomorphic(dihedral_rack(5), trivial_rack(5))


def test_embedding_bound():
    with pytest.raises(RackError):
        find_rack_embedding(trivial_rack(1), trivial_rack(200))


def test_class_is_one_orbit():
    R = class_rack(7, lambda c: c.kind == "unipotent")
    G = psl_table(field_of_order(7))
    assert set(G.conjugation_orbit(int(R.elements[0]))) == set(int(x) for x in R.elements)
    assert len(R.inner_orbits()) == 1
