import pytest

from flatcurve import (
    MoveKind,
    ReductionError,
    TRIVIAL,
    Trace,
    p_family,
    pretzel,
    reduce_p_family,
    reduce_pretzel,
    reduce_torus,
    reduce_two_bridge,
    rii_upper_bound_from_trace,
    torus_2q,
    two_bridge,
    verify_trace,
)
from flatcurve.generators import FamilyError


def _check_reduction(trace, cost):
    report = verify_trace(trace)
    assert report.valid, report.message
    assert trace.claimed_final.is_trivial
    assert report.cost == cost
    assert rii_upper_bound_from_trace(trace) == cost


@pytest.mark.parametrize("p", range(1, 6))
def test_torus(p):
    trace = reduce_torus(p)
    _check_reduction(trace, 0)
    assert MoveKind.R2_MINUS not in trace.kinds()


@pytest.mark.parametrize("a", [[1, 1, 1], [3, 5, 7], [2, 3, 5], [5], [4, 1], [1, 2, 3]])
def test_pretzel(a):
    _check_reduction(reduce_pretzel(a), 0)


@pytest.mark.parametrize("a", [[3], [3, 4], [2, 3], [2, 2], [1, 1, 1], [2] * 10])
def test_two_bridge(a):
    _check_reduction(reduce_two_bridge(a), 0)


def _compositions(n):
    if n == 0:
        yield []
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield [first] + rest


def test_every_small_single_curve_family_member_reduces():
    done = 0
    for total in range(1, 9):
        for a in _compositions(total):
            for build, reduce in ((two_bridge, reduce_two_bridge), (pretzel, reduce_pretzel)):
                try:
                    build(a)
                except FamilyError:
                    continue
                _check_reduction(reduce(a), 0)
                done += 1
    assert done > 150


@pytest.mark.parametrize("m,n", [(1, 2), (1, 4), (2, 4), (1, 5), (2, 3)])
def test_p_family_uses_m_negative_type_two_moves(m, n):
    trace = reduce_p_family(m, n)
    _check_reduction(trace, m)
    # the type 2 moves all come first, inside the first box
    kinds = [s.kind for s in trace.steps]
    assert kinds[:m] == [MoveKind.R2_MINUS] * m
    assert MoveKind.R2_MINUS not in kinds[m:]
    assert trace.initial == p_family(m, n)


def test_upper_bound_on_empty_trace():
    assert rii_upper_bound_from_trace(Trace(TRIVIAL, [])) == 0


def test_upper_bound_needs_trivial_endpoint():
    with pytest.raises(ValueError):
        rii_upper_bound_from_trace(Trace(torus_2q(1), []))


def test_unsupported_parameters():
    with pytest.raises(FamilyError):
        reduce_p_family(0, 4)
    with pytest.raises(FamilyError):
        reduce_pretzel([2, 2, 3])
    assert issubclass(ReductionError, RuntimeError)
