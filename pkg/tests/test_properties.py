"""Randomized properties driven by hypothesis."""

from hypothesis import given, settings, strategies as st

from flatcurve import (
    MoveKind,
    PlaneCurve,
    TRIVIAL,
    apply_move,
    canonical_key,
    census,
    enumerate_moves,
    format_gauss_code,
    from_gauss_code,
    is_equivalent,
    parse_gauss_code,
    validate,
)
from flatcurve.curve import canonical_form, curve_from_canonical_form

from oracles import invariant_violations, map_key

SEEDS = [c for _, c in census(4)]


@st.composite
def curves(draw, max_crossings=10, max_steps=40):
    """A curve reached by a random walk of moves from a census seed."""
    cur = draw(st.sampled_from(SEEDS))
    for _ in range(draw(st.integers(0, max_steps))):
        moves = [m for m in enumerate_moves(cur)
                 if m.kind is not MoveKind.R1_PLUS or cur.num_vertices < max_crossings]
        cur = apply_move(cur, draw(st.sampled_from(moves)))
    return cur


@settings(max_examples=200, deadline=None)
@given(curves())
def test_gauss_code_round_trip(c):
    text = format_gauss_code(c)
    back = from_gauss_code(parse_gauss_code(text))
    assert back == c
    assert canonical_key(back) == canonical_key(c)


@settings(max_examples=200, deadline=None)
@given(curves())
def test_unsigned_word_reembeds(c):
    # the unsigned word alone need not fix the curve, but any embedding shares the word
    d = from_gauss_code(" ".join(str(x) for x in c.word))
    assert d.word == c.word
    assert validate(d).ok


@settings(max_examples=200, deadline=None)
@given(curves())
def test_canonical_key_matches_map_oracle_under_symmetries(c):
    rev = PlaneCurve(tuple(reversed(c.tokens)), c.chirality)
    for d in (c.mirror(), rev):
        assert canonical_key(d) == canonical_key(c)
        assert map_key(d) == map_key(c)
    assert canonical_key(curve_from_canonical_form(canonical_form(c.tokens, c.chirality))) == canonical_key(c)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_random_move_sequences_keep_invariants(data):
    cur = data.draw(st.sampled_from(SEEDS))
    for _ in range(data.draw(st.integers(0, 30))):
        moves = enumerate_moves(cur)
        m = data.draw(st.sampled_from(moves))
        nxt = apply_move(cur, m)
        assert invariant_violations(nxt) == []
        assert validate(nxt).ok
        cur = nxt


@settings(max_examples=100, deadline=None)
@given(curves(max_crossings=6))
def test_equivalence_is_map_isomorphism(c):
    for _, other in census(2):
        assert is_equivalent(c, other) == (map_key(c) == map_key(other))
    assert is_equivalent(c, c.mirror())
    assert not is_equivalent(c, TRIVIAL) or c.is_trivial
