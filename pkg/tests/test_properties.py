"""Randomized properties over small fields."""

from hypothesis import given, settings
from hypothesis import strategies as st

from pslrack.conjugacy import class_of_matrix, psl_table
from pslrack.field import field_of_order
from pslrack.fpgroup import Presentation, free_reduce, invert, parse_presentation
from pslrack.matrices import Matrix2, char_poly, matrix_group
from pslrack.racks import conjugation_rack

FIELDS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]

field = st.sampled_from(FIELDS).map(field_of_order)


@given(field, st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.pow(a, F.q) == a


@settings(max_examples=50)
@given(st.sampled_from([4, 5, 7, 8, 9]).map(field_of_order), st.data())
def test_conjugation_preserves_class_and_char_poly(F, data):
    G = matrix_group("PSL", F)
    T = G.table
    g = data.draw(st.integers(0, T.order - 1))
    h = data.draw(st.integers(0, T.order - 1))
    c = int(T.conjugate(g, h))
    assert class_of_matrix(G.matrix(c)) == class_of_matrix(G.matrix(h))
    assert char_poly(G.matrix(c)) == char_poly(G.matrix(h))


@settings(max_examples=30)
@given(st.sampled_from([4, 5, 7]).map(field_of_order), st.data())
def test_rack_generated_by_random_elements_is_rack(F, data):
    T = psl_table(F)
    seeds = data.draw(st.lists(st.integers(0, T.order - 1), min_size=1, max_size=3))
    carrier = sorted({int(T.conjugate(g, s)) for s in seeds for g in range(T.order)})
    R = conjugation_rack(T, carrier)
    assert R.check_axioms() and R.is_quandle()


letters = st.integers(1, 3).flatmap(lambda k: st.sampled_from([k, -k]))
words = st.lists(letters, max_size=12).map(tuple)


@given(words)
def test_free_reduction(w):
    r = free_reduce(w)
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
    assert free_reduce(w + invert(w)) == ()
    assert free_reduce(r) == r


@given(st.lists(words, max_size=4))
def test_presentation_text_round_trip(rels):
    P = Presentation(("a", "b", "c"), tuple(free_reduce(r) for r in rels))
    assert parse_presentation(P.to_text()) == P
