import pytest

from pslrack.field import FieldError, build_field, field_of_order, prime_power, total_order_cmp


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27])
def test_field_axioms(q):
    F = field_of_order(q)
    els = range(q)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
    # distributivity on a sample
    for a in range(0, q, max(1, q // 5)):
        for b in els:
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25])
def test_multiplicative_group_is_cyclic(q):
    F = field_of_order(q)
    assert max(F.mult_order(a) for a in range(1, q)) == q - 1


def test_squares_and_sqrt():
    F = field_of_order(13)
    assert F.squares == frozenset({1, 3, 4, 9, 10, 12})
    for a in F.squares:
        r = F.sqrt(a)
        assert F.mul(r, r) == a and r <= F.neg(r)
    assert field_of_order(8).squares == frozenset(range(1, 8))


def test_subfields():
    F = field_of_order(16)
    assert F.subfield(1) == frozenset({0, 1})
    assert len(F.subfield(2)) == 4
    with pytest.raises(FieldError):
        F.subfield(3)


def test_rejects_non_prime_powers():
    for q in (0, 1, 6, 10, 12):
        with pytest.raises(FieldError):
            field_of_order(q)
    assert prime_power(49) == (7, 2)


def test_fields_are_cached():
    assert build_field(3, 2) is field_of_order(9)


def test_total_order_is_code_order():
    F = field_of_order(9)
    a, b = F.elem(2), F.elem(5)
    assert total_order_cmp(a, b) < 0 and total_order_cmp(b, a) > 0 and total_order_cmp(a, a) == 0


def test_element_objects():
    F = field_of_order(9)
    x = F.gen
    assert x**8 == F.one and (x + 1) * (x + 1).inv() == F.one
