import pytest

from flatcurve import (
    MoveKind,
    PatternError,
    TangleSite,
    TRIVIAL,
    absorb,
    expand_macro_T,
    find_tangle_occurrences,
    is_equivalent,
    kink_chain,
    p_family,
    rotate_twist,
    torus_2q,
    two_bridge,
    verify_trace,
)
from flatcurve.generators import box_chain
from flatcurve.macros import twist_order

from oracles import invariant_violations

HOMOTOPY_KINDS = {MoveKind.R1_PLUS, MoveKind.R1_MINUS, MoveKind.R3}


@pytest.mark.parametrize("k", range(1, 9))
def test_macro_on_every_site_of_fixture(k):
    c = two_bridge([k, 2])
    sites = find_tangle_occurrences(c, k)
    assert sites
    for site in sites:
        trace = expand_macro_T(c, k, site)
        report = verify_trace(trace)
        assert report.valid, report.message
        assert trace.kinds() <= HOMOTOPY_KINDS
        assert report.cost == 0
        assert trace.claimed_final.num_vertices == c.num_vertices
        for cur in trace.curves():
            assert invariant_violations(cur) == []


@pytest.mark.parametrize("p", range(1, 6))
def test_rotating_torus_twist_gives_kinks(p):
    c = torus_2q(p)
    k = 2 * p + 1
    assert find_tangle_occurrences(c, k)
    trace = rotate_twist(c, list(range(1, k + 1)))
    assert verify_trace(trace).valid
    assert is_equivalent(trace.claimed_final, kink_chain(k))


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_absorbing_a_crossing_into_even_twist(k):
    # C(k, 1): the lone crossing is swallowed by the k-twist, which turns over
    c = two_bridge([k, 1])
    for site in find_tangle_occurrences(c, k):
        trace = absorb(c, site.twist, site.extra)
        report = verify_trace(trace)
        assert report.valid and report.cost == 0
        assert site.extra not in trace.claimed_final.word
        assert is_equivalent(trace.claimed_final, kink_chain(k))


def test_macro_lengths_grow_as_expected():
    lengths = []
    for k in range(1, 9):
        c = two_bridge([k, 2])
        site = find_tangle_occurrences(c, k)[0]
        lengths.append(len(expand_macro_T(c, k, site)))
    # the even macro excludes the final kink removal
    assert lengths == [0, 1, 5, 8, 14, 19, 27, 34]


def test_trivial_curve_has_no_sites():
    for k in range(1, 5):
        assert find_tangle_occurrences(TRIVIAL, k) == []


def test_wrong_site_is_rejected():
    c = two_bridge([3, 2])
    site = find_tangle_occurrences(c, 3)[0]
    with pytest.raises(PatternError):
        expand_macro_T(c, 5, site)
    with pytest.raises(PatternError):
        expand_macro_T(c, 3, TangleSite(3, (1, 4, 5)))
    with pytest.raises(PatternError):
        absorb(c, (4, 5), 5)


def test_p_family_absorption_sites_open_beside_an_empty_box():
    # every crossing of P(1, 4) lies in a clasp closed off by its neighbours
    assert find_tangle_occurrences(p_family(1, 4), 2) == []
    for m in (1, 2):
        c = box_chain([0] + [2 * m] * 7)
        sites = find_tangle_occurrences(c, 2 * m)
        assert {s.extra for s in sites} == {2 * m, 7 * 2 * m}
        for site in sites:
            trace = absorb(c, site.twist, site.extra)
            assert verify_trace(trace).valid
            assert trace.claimed_final.num_vertices == c.num_vertices - 1


def test_twist_order():
    c = torus_2q(2)
    order = twist_order(c, [3, 1, 5, 2, 4])
    assert sorted(order) == [1, 2, 3, 4, 5]
    assert twist_order(two_bridge([2, 2]), [1, 3]) is None
