import pytest

from pslrack.field import field_of_order
from pslrack.matrices import (
    GroupBoundError,
    Matrix2,
    MatrixGroup,
    ProjElement,
    act,
    char_poly,
    element,
    element_order,
    enumerate_group,
    fixed_points,
    group_order,
    matrix_group,
)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("tag", ["SL", "PSL", "PGL"])
def test_group_orders(tag, q):
    assert matrix_group(tag, field_of_order(q)).order == group_order(tag, q)


def test_enumeration_has_no_duplicates():
    F = field_of_order(7)
    els = enumerate_group("PSL", F)
    assert len(set(els)) == len(els) == 168


def test_projective_identification():
    F = field_of_order(5)
    g = element("PSL", F, 2, 0, 0, 3)
    h = element("PSL", F, 3, 0, 0, 2)
    assert g == h and hash(g) == hash(h)
    assert element("PGL", F, 2, 1, 0, 2) == element("PGL", F, 1, 3, 0, 1)


def test_table_agrees_with_matrix_products():
    F = field_of_order(4)
    G = matrix_group("PSL", F)
    T = G.table
    for i in range(0, G.order, 7):
        for j in range(0, G.order, 5):
            assert G.element(int(T.mul[i, j])) == G.element(i) * G.element(j)


def test_orders_and_inverses():
    F = field_of_order(7)
    g = element("PSL", F, 1, 1, 0, 1)
    assert element_order(g) == 7
    assert (g * g.inverse()).is_identity()
    s = element("PSL", F, 0, 1, F.neg(1), 0)
    assert element_order(s) == 2


def test_char_poly_up_to_scaling():
    F = field_of_order(7)
    M = Matrix2(F, 2, 1, 3, 5)
    assert char_poly(M) == char_poly(M.scale(3))


def test_mobius_action():
    F = field_of_order(5)
    u = element("PSL", F, 1, 1, 0, 1)
    assert act(u, "inf") == "inf" and act(u, 0) == 1
    assert fixed_points(u) == 1
    assert fixed_points(element("PSL", F, 2, 0, 0, 3)) == 2


def test_enumeration_bound():
    with pytest.raises(GroupBoundError):
        MatrixGroup("PSL", field_of_order(8), bound=7)


def test_rejects_singular_matrix():
    F = field_of_order(5)
    with pytest.raises(ValueError):
        ProjElement.make("PSL", Matrix2(F, 1, 2, 2, 4))
    with pytest.raises(ValueError):
        ProjElement.make("PSL", Matrix2(F, 2, 0, 0, 1))  # determinant 2 is not a square mod 5
