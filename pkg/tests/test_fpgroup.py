import numpy as np
import pytest

from pslrack.fpgroup import (
    ROBERTSON_A6_COVER,
    SCHUR_A6_COVER,
    CosetLimitError,
    ParseError,
    a6_cover,
    analyze_group,
    central_quotient,
    commutator,
    free_reduce,
    parse_presentation,
    regular_group,
    todd_coxeter,
)

A5 = "a, b | a^2, b^3, (ab)^5"


def test_parse_basic():
    P = parse_presentation("<a, b | a^2, b^3, (ab)^5>")
    assert P.generators == ("a", "b")
    assert P.relators == ((1, 1), (2, 2, 2), (1, 2) * 5)


@pytest.mark.parametrize("text, word", [
    ("a^-2", (-1, -1)),
    ("a^{3}", (1, 1, 1)),
    ("a a^-1 b", (2,)),
    ("[a, b]", (-1, -2, 1, 2)),
    ("a = b", (1, -2)),
    ("a*b", (1, 2)),
    ("1", ()),
    ("(a b^-1)^-1", (2, -1)),
])
def test_parse_words(text, word):
    P = parse_presentation("a, b | ")
    assert P.parse_word(text) == word


def test_commutator_of_equal_generators_is_empty():
    P = parse_presentation("a | [a,a]")
    assert P.relators == ((),)


def test_multi_character_names_match_greedily():
    P = parse_presentation("x, x1 | x1 x, x1^2")
    assert P.relators[0] == (2, 1)
    assert P.to_text() == "x, x1 | x1*x, x1^2"


@pytest.mark.parametrize("text, pos", [
    ("a, b | a^2, c", 12),
    ("a, b | a^x", 9),
    ("a, b | (ab", 10),
    ("a, b a^2", 8),
])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_presentation(text)
    assert err.value.position == pos


def test_canonical_text_round_trips():
    P = parse_presentation(ROBERTSON_A6_COVER)
    Q = parse_presentation(P.to_text())
    assert Q == P
    assert parse_presentation(str(P)) == P


def test_free_reduce_and_commutator():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert commutator((1,), (2,)) == (-1, -2, 1, 2)


def test_a5_enumeration():
    T = todd_coxeter(parse_presentation(A5))
    assert T.index == 60 and T.is_closed()
    G = regular_group(T)
    assert analyze_group(G).class_sizes() == [1, 12, 12, 15, 20]


def test_subgroup_enumeration():
    P = parse_presentation(A5)
    assert todd_coxeter(P, [(1,), (2,)]).index == 1
    assert todd_coxeter(P, [(2,)]).index == 20


@pytest.mark.parametrize("strategy", ["hlt", "hlt+lookahead"])
def test_cyclic_and_free_abelian_quotients(strategy):
    assert todd_coxeter(parse_presentation("a | a^7"), strategy=strategy).index == 7
    assert todd_coxeter(parse_presentation("a, b | a^3, b^4, [a,b]"), strategy=strategy).index == 12


def test_coset_limit():
    with pytest.raises(CosetLimitError):
        todd_coxeter(parse_presentation(A5), limit=10, strategy="hlt")


def test_unknown_strategy():
    with pytest.raises(ValueError):
        todd_coxeter(parse_presentation(A5), strategy="felsch")


def test_a6_cover_presentations_agree():
    a = analyze_group(a6_cover())
    b = analyze_group(regular_group(todd_coxeter(parse_presentation(SCHUR_A6_COVER))))
    for g in (a, b):
        assert g.order == 2160
        assert g.center.size == 6 and g.center_cyclic
        assert g.derived_order == 2160
        assert g.class_size_counts() == {1: 6, 72: 12, 90: 9, 120: 4}


@pytest.mark.parametrize("n, order, sizes", [
    (1, 2160, None),
    (2, 1080, None),
    (3, 720, None),
    (6, 360, [1, 40, 40, 45, 72, 72, 90]),
])
def test_central_quotients(n, order, sizes):
    cq = central_quotient(a6_cover(), n)
    assert cq.quotient.order == order
    assert cq.kernel.size == n
    if sizes:
        assert cq.analysis.class_sizes() == sizes


def test_a6_fibration():
    rows = central_quotient(a6_cover(), 6).fibre_table()
    got = sorted((r["size"], tuple(r["covering_class_sizes"])) for r in rows)
    assert got == [
        (1, (1,) * 6),
        (40, (120, 120)),
        (40, (120, 120)),
        (45, (90, 90, 90)),
        (72, (72,) * 6),
        (72, (72,) * 6),
        (90, (90,) * 6),
    ]


def test_central_quotient_rejects_bad_order():
    with pytest.raises(ValueError):
        central_quotient(a6_cover(), 4)


def test_regular_group_generators_satisfy_relators():
    P = parse_presentation(A5)
    G = regular_group(todd_coxeter(P))
    a, b = G.presentation_generators
    assert G.element_order(a) == 2 and G.element_order(b) == 3
    assert G.element_order(G.mul[a, b]) == 5
