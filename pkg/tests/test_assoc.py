import pytest

from pslrack.assoc import (
    UnsupportedError,
    ass_descriptor,
    basepoint_orders,
    covering,
    expected_relative_multiplier,
    h2_quandle,
    involution_centralizer,
    is_dihedral,
    mu_image_order,
    relative_schur_multiplier,
)
from pslrack.conjugacy import all_classes, psl_table
from pslrack.field import field_of_order


def find(q, pred):
    return next(c for c in all_classes(field_of_order(q)) if pred(c))


def involution(q):
    return find(q, lambda c: c.element_order == 2)


def unipotent(q):
    return find(q, lambda c: c.kind == "unipotent")


@pytest.mark.parametrize("q, label, kernel", [
    (4, "SL(2,5)", 2), (5, "SL(2,5)", 2), (7, "SL(2,7)", 2),
    (8, "SL(2,8)", 1), (9, "A6*", 6), (11, "SL(2,11)", 2),
])
def test_coverings(q, label, kernel):
    cov = covering(field_of_order(q))
    assert cov.label == label
    assert cov.kernel.size == kernel
    assert cov.group.order == kernel * psl_table(field_of_order(q)).order


def test_small_fields_unsupported():
    with pytest.raises(UnsupportedError):
        covering(field_of_order(3))
    with pytest.raises(UnsupportedError):
        mu_image_order(all_classes(field_of_order(5))[0])


def test_mu_examples():
    assert mu_image_order(involution(5)) == 2
    assert mu_image_order(find(7, lambda c: c.element_order == 3)) == 1
    assert mu_image_order(unipotent(8)) == 1


@pytest.mark.parametrize("cd, want", [
    (lambda: involution(7), []),
    (lambda: unipotent(7), [2]),
    (lambda: involution(9), [3]),
    (lambda: find(9, lambda c: c.element_order == 3), [2]),
    (lambda: find(9, lambda c: c.element_order == 5), [6]),
    (lambda: unipotent(8), []),
])
def test_relative_multiplier_examples(cd, want):
    assert relative_schur_multiplier(cd()) == want


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13])
def test_relative_multiplier_matches_closed_form(q):
    for cd in all_classes(field_of_order(q))[1:]:
        a = ass_descriptor(cd)
        assert a.rel_multiplier == expected_relative_multiplier(cd), cd.class_id
        assert a.consistent()


@pytest.mark.parametrize("q", [5, 7, 9])
def test_mu_image_independent_of_basepoint(q):
    for cd in all_classes(field_of_order(q))[1:]:
        assert basepoint_orders(cd, samples=8) == {mu_image_order(cd)}


def test_dx_identification():
    assert ass_descriptor(unipotent(8)).dx_identification == "PSL(2,8)"
    a = ass_descriptor(unipotent(9))
    assert a.dx_identification == "A6*/Z3" and a.dx_order == 720
    assert ass_descriptor(unipotent(7)).dx_identification == "SL(2,7)"
    assert ass_descriptor(involution(7)).ass_identification == "PSL(2,7) x Z"


@pytest.mark.parametrize("cd, want", [
    (lambda: unipotent(5), [10]),
    (lambda: involution(5), [2, 2]),
    (lambda: involution(7), [2, 2]),
])
def test_h2_examples(cd, want):
    assert h2_quandle(cd()) == want


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_involution_centralizer_is_dihedral(q):
    F = field_of_order(q)
    C = involution_centralizer(F)
    assert C.size in (q - 1, q + 1)
    assert is_dihedral(psl_table(F), C)


def test_json_keys():
    d = ass_descriptor(involution(5)).to_json()
    assert set(d) == {"class_id", "name", "covering_group", "mu_image_order",
                      "relative_multiplier", "dx", "dx_order", "ass", "h2"}
