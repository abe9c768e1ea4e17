import pytest
from hypothesis import given, strategies as st

from alcove.expr import Atom, ParseError, parse


def test_simple_product():
    expr = parse("L(s0;1,1) ⊗ Delta(s0s2) * T(2,0)", rank=2)
    assert expr.atoms == (
        Atom("Simple", "s0", (1, 1), None, 0),
        Atom("Weyl", "s0s2", None, None, 12),
        Atom("Tilting", "e", (2, 0), None, 26),
    )


def test_custom_and_omega_words():
    a, b = parse("M(1,0)*L(s0s2w1)", rank=2).atoms
    assert (a.kind, a.name, a.weight) == ("Custom", "M", (1, 0))
    assert (b.kind, b.word) == ("Simple", "s0s2w1")
    assert parse("L(w2)").atoms[0].word == "w2"
    assert parse(" L ( e ; 0 , 0 ) ").atoms[0].weight == (0, 0)


@pytest.mark.parametrize("text, pos, fragment", [
    ("L(s0;1,1", 8, "expected ')'"),
    ("L(s0;1)", 5, "weight has 1 entries"),
    ("L(s3)", 2, "unknown generator s3"),
    ("L(x1)", 2, "malformed word"),
    ("M(s0)", 2, "takes a weight"),
    ("L(e) + L(e)", 5, "unexpected character"),
    ("L(e) L(e)", 5, "expected '⊗'"),
    ("", 0, "expected an object name"),
    ("T()", 2, "takes a weight"),
])
def test_errors_report_position(text, pos, fragment):
    with pytest.raises(ParseError) as info:
        parse(text, rank=2)
    assert info.value.pos == pos
    assert fragment in str(info.value)


def test_caret_points_at_error():
    with pytest.raises(ParseError) as info:
        parse("L(s0;1,1,1)", rank=2)
    lines = str(info.value).splitlines()
    assert lines[-1].index("^") - 2 == info.value.pos == 5


weights = st.lists(st.integers(-20, 20), min_size=2, max_size=2).map(tuple)
words = st.sampled_from(["e", "s0", "s0s1", "s0s2w1", "s1s2s0", "w1"])


@given(st.lists(st.tuples(st.sampled_from(["L", "Delta"]), words, weights), min_size=1, max_size=4))
def test_render_parse_round_trip(atoms):
    text = " * ".join(f"{head}({word};{','.join(map(str, w))})" for head, word, w in atoms)
    parsed = parse(text, rank=2).atoms
    assert [(a.word, a.weight) for a in parsed] == [(word, w) for _, word, w in atoms]
    assert [a.kind for a in parsed] == [{"L": "Simple", "Delta": "Weyl"}[h] for h, _, _ in atoms]
