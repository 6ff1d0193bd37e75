import json

import pytest

from flatcurve import (
    DECREASING,
    HOMOTOPY_13,
    MoveKind,
    MovePolicy,
    Outcome,
    SearchConfig,
    SearchError,
    TRIVIAL,
    canonical_key,
    census,
    enumerate_moves,
    apply_move,
    from_gauss_code,
    kink_chain,
    p_family,
    reachable_13,
    rii_bounded,
    torus_2q,
    verify_trace,
)

from oracles import all_curves, map_key, oracle_rii

NO_KINKS = MovePolicy.of(MoveKind.R1_MINUS, MoveKind.R2_MINUS, MoveKind.R3)


def _check_witness(curve, result):
    assert result.witness is not None
    report = verify_trace(result.witness)
    assert report.valid, report.message
    assert report.cost == result.value
    assert result.witness.initial == curve
    assert result.witness.claimed_final.is_trivial


def test_trivial_curve():
    r = rii_bounded(TRIVIAL, SearchConfig(crossing_budget=0))
    assert r.outcome is Outcome.FOUND and r.value == 0 and len(r.witness) == 0


def test_kink():
    r = rii_bounded(kink_chain(1), SearchConfig(crossing_budget=2))
    assert r.outcome is Outcome.FOUND and r.value == 0
    _check_witness(kink_chain(1), r)


def test_two_crossing_curves_reduce_freely():
    for word in ("1 1 2 2", "1 2 2 1"):
        c = from_gauss_code(word)
        r = rii_bounded(c, SearchConfig(crossing_budget=6))
        assert r.value == 0
        _check_witness(c, r)


def test_full_policy_matches_oracle():
    for _, c in census(4):
        budget = c.num_vertices + 4
        r = rii_bounded(c, SearchConfig(crossing_budget=budget))
        assert r.outcome is Outcome.FOUND
        assert r.value == oracle_rii(c, budget)
        _check_witness(c, r)


@pytest.mark.parametrize("policy", [DECREASING, NO_KINKS], ids=["decreasing", "no-kinks"])
def test_restricted_policies_match_oracle(policy):
    values = []
    for _, c in census(5):
        budget = c.num_vertices
        r = rii_bounded(c, SearchConfig(crossing_budget=budget, policy=policy))
        expected = oracle_rii(c, budget, policy)
        if expected is None:
            assert r.outcome is Outcome.EXHAUSTED
        else:
            assert r.outcome is Outcome.FOUND and r.value == expected
            _check_witness(c, r)
        values.append(expected)
    # the restricted policies give nonzero values too
    assert {0, 1} <= set(values)


def test_strict_mirror_states_give_same_values():
    for _, c in census(4):
        a = rii_bounded(c, SearchConfig(crossing_budget=c.num_vertices, policy=DECREASING))
        b = rii_bounded(c, SearchConfig(crossing_budget=c.num_vertices, policy=DECREASING, mirror=False))
        assert (a.outcome, a.value) == (b.outcome, b.value)


def test_values_invariant_under_homotopy_moves():
    budget = 7
    for _, c in census(3):
        base = rii_bounded(c, SearchConfig(crossing_budget=budget))
        for m in enumerate_moves(c, HOMOTOPY_13):
            d = apply_move(c, m)
            other = rii_bounded(d, SearchConfig(crossing_budget=budget))
            assert (other.outcome, other.value) == (base.outcome, base.value)


def test_exhausted_and_caps():
    only_r2 = MovePolicy.of(MoveKind.R2_MINUS)
    r = rii_bounded(kink_chain(1), SearchConfig(crossing_budget=1, policy=only_r2))
    assert r.outcome is Outcome.EXHAUSTED and r.value is None and r.witness is None
    # with only decreasing moves the trefoil needs one negative type 2 move
    r = rii_bounded(torus_2q(1), SearchConfig(crossing_budget=3, policy=DECREASING, cost_cap=0))
    assert r.outcome is Outcome.EXHAUSTED
    r = rii_bounded(torus_2q(1), SearchConfig(crossing_budget=3, policy=DECREASING))
    assert r.value == 1
    r = rii_bounded(p_family(1, 4), SearchConfig(crossing_budget=18, state_cap=50))
    assert r.outcome is Outcome.CAPS_HIT
    assert r.states_discovered <= 50
    r = rii_bounded(p_family(1, 4), SearchConfig(crossing_budget=18, time_limit=0.0))
    assert r.outcome is Outcome.CAPS_HIT


def test_config_errors():
    with pytest.raises(SearchError):
        rii_bounded(torus_2q(2), SearchConfig(crossing_budget=3))
    with pytest.raises(SearchError):
        SearchConfig(crossing_budget=3, state_cap=0)
    with pytest.raises(SearchError):
        SearchConfig(crossing_budget=-1)


def test_result_json_and_summary():
    r = rii_bounded(torus_2q(1), SearchConfig(crossing_budget=5))
    data = json.loads(json.dumps(r.to_json()))
    assert data["outcome"] == "found" and data["value"] == 0
    assert data["witness"]["final"] == ""
    assert "negative-2 moves: 0" in r.summary().splitlines()


def test_reachable_examples():
    r = reachable_13(kink_chain(1), TRIVIAL, SearchConfig(crossing_budget=2))
    assert r.outcome is Outcome.CONNECTED
    assert verify_trace(r.witness).valid
    r = reachable_13(torus_2q(1), TRIVIAL, SearchConfig(crossing_budget=9))
    assert r.outcome is Outcome.CONNECTED
    assert r.witness.kinds() <= {MoveKind.R1_PLUS, MoveKind.R1_MINUS, MoveKind.R3}
    assert verify_trace(r.witness).valid
    assert r.witness.claimed_final.is_trivial


def test_reachable_respects_budget():
    # five bigons and two pentagons: no type 1 or 3 move without a new kink
    r = reachable_13(torus_2q(2), TRIVIAL, SearchConfig(crossing_budget=5))
    assert r.outcome is Outcome.NOT_CONNECTED
    assert r.stats["exhausted_side"] == "a"
    r = reachable_13(torus_2q(2), TRIVIAL, SearchConfig(crossing_budget=7))
    assert r.outcome is Outcome.CONNECTED
    r = reachable_13(torus_2q(1), TRIVIAL, SearchConfig(crossing_budget=9, state_cap=5))
    assert r.outcome is Outcome.CAPS_HIT


def test_p_family_side_exhausts():
    r = reachable_13(p_family(1, 4), TRIVIAL, SearchConfig(crossing_budget=17))
    assert r.outcome is Outcome.NOT_CONNECTED


def test_census_counts():
    counts = [0] * 6
    for _, c in census(5):
        counts[c.num_vertices] += 1
    assert counts == [1, 1, 2, 6, 19, 76]
    assert len(census(0)) == 1
    assert len(census(1)) == 2
    keys = [k for k, _ in census(5)]
    assert len(keys) == len(set(keys))
    assert all(canonical_key(c) == k for k, c in census(5))


def test_census_matches_brute_force():
    brute = all_curves(4)
    assert sorted(map_key(c) for _, c in census(4)) == sorted(brute)


def test_census_limit():
    with pytest.raises(SearchError):
        census(7)
