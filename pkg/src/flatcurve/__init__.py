"""Closed plane curves, local moves, explicit reductions and bounded searches."""

from .curve import (
    CurveError,
    Face,
    GaussCode,
    PlaneCurve,
    RealizabilityError,
    TRIVIAL,
    canonical_key,
    euler_characteristic,
    faces,
    format_gauss_code,
    from_gauss_code,
    gauss_even,
    interlaced_pairs,
    is_equivalent,
    parse_gauss_code,
    read_curve,
    realizations,
    to_gauss_code,
    trivial,
    validate,
    write_curve,
)
from .generators import (
    FamilyError,
    box_chain,
    hagge_yazinski,
    kink_chain,
    p_family,
    parse_family,
    pretzel,
    torus_2q,
    two_bridge,
)
from .macros import PatternError, TangleSite, absorb, expand_macro_T, find_tangle_occurrences, rotate_twist
from .moves import (
    DECREASING,
    FULL_POLICY,
    HOMOTOPY_13,
    Move,
    MoveError,
    MoveKind,
    MovePolicy,
    Trace,
    VerificationReport,
    apply_move,
    enumerate_moves,
    replay,
    verify_trace,
)
from .reduction import (
    ReductionError,
    reduce_p_family,
    reduce_pretzel,
    reduce_torus,
    reduce_two_bridge,
    rii_upper_bound_from_trace,
)
from .search import Outcome, SearchConfig, SearchError, SearchResult, census, reachable_13, rii_bounded

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
