"""Constructors for the curve families used in the reductions.

Each constructor returns a :class:`PlaneCurve` whose labels follow the
building order, so callers can find the crossings of a given twist: twist
crossings are numbered consecutively along the twist.
"""

from __future__ import annotations

import math
import re
from typing import Sequence

from .curve import TRIVIAL, PlaneCurve
from .geometry import curve_from_polyline, polar_polyline
from .tangles import (
    Tangle,
    add,
    _fresh,
    curve_from_pd,
    horizontal_twist,
    numerator,
    rotate,
    vertical_twist,
)


class FamilyError(ValueError):
    """Parameters that do not describe a single closed curve."""


def trivial() -> PlaneCurve:
    return TRIVIAL


def kink_chain(k: int) -> PlaneCurve:
    """``k`` monogons strung along a circle."""
    if k < 0:
        raise FamilyError("kink count must be non-negative")
    if k == 0:
        return TRIVIAL
    return _closed(numerator(vertical_twist(k)))


def _closed(pd) -> PlaneCurve:
    try:
        return curve_from_pd(pd)
    except ValueError as exc:
        raise FamilyError(str(exc)) from None


def torus_2q(p: int) -> PlaneCurve:
    """The (2, 2p+1) torus knot projection: the closure of a horizontal twist."""
    if p < 1:
        raise FamilyError("torus parameter p must be at least 1")
    return _closed(numerator(horizontal_twist(2 * p + 1)))


def pretzel_tangle(a: Sequence[int]) -> Tangle:
    if not a or any(x < 1 for x in a):
        raise FamilyError("pretzel twists must be positive")
    t = vertical_twist(a[0])
    for x in a[1:]:
        t = add(t, vertical_twist(x))
    return t


def pretzel(a: Sequence[int]) -> PlaneCurve:
    """Numerator closure of a row of vertical twists with ``a[i]`` crossings.

    The result is a single curve when every entry is odd and there is an odd
    number of them, or when exactly one entry is even.
    """
    a = list(a)
    evens = sum(1 for x in a if x % 2 == 0)
    if not ((evens == 0 and len(a) % 2 == 1) or evens == 1):
        raise FamilyError(f"pretzel{tuple(a)} has more than one component")
    return _closed(numerator(pretzel_tangle(a)))


def two_bridge_tangle(a: Sequence[int]) -> Tangle:
    if not a or any(x < 1 for x in a):
        raise FamilyError("two-bridge twists must be positive")
    t = horizontal_twist(a[0])
    for x in a[1:]:
        t = add(rotate(t), horizontal_twist(x))
    return t


def two_bridge(a: Sequence[int]) -> PlaneCurve:
    """Conway's normal form C(a1, ..., an) built from alternating twists."""
    return _closed(numerator(two_bridge_tangle(list(a))))


# -- the annular box family ---------------------------------------------

INNER, MIDDLE, OUTER = 1, 2, 3


def box_tracks(kind: str) -> tuple[int, int, int]:
    """(low, high, passing) tracks of a box of type ``"L"`` or ``"U"``."""
    if kind == "L":
        return INNER, MIDDLE, OUTER
    if kind == "U":
        return MIDDLE, OUTER, INNER
    raise FamilyError(f"unknown box type {kind!r}")


def box_kinds(count: int) -> list[str]:
    return ["L" if i % 2 == 0 else "U" for i in range(count)]


def box_tangle(kind: str, clasp: int) -> Tangle:
    """One box as a six-legged tangle.

    Legs run counterclockwise: left wall top to bottom, then right wall bottom
    to top.  Two tracks form a clasp of ``clasp`` crossings, each strand a U
    hanging from its own wall; the third track passes straight through.
    """
    lo, hi, passing = box_tracks(kind)
    left = {y: _fresh() for y in (1, 2, 3)}
    right = {y: _fresh() for y in (1, 2, 3)}
    right[passing] = left[passing]
    crossings = ()
    if not clasp:
        left[hi], right[hi] = left[lo], right[lo]
    else:
        v = vertical_twist(clasp).fresh_copy()
        nw, sw, se, ne = v.legs
        ren = {nw: left[hi], sw: left[lo], se: right[lo], ne: right[hi]}
        crossings = v.renamed(ren).crossings
    legs = (left[3], left[2], left[1], right[1], right[2], right[3])
    return Tangle(crossings, legs)


def box_chain(clasps: Sequence[int], kinds: Sequence[str] | None = None) -> PlaneCurve:
    """Boxes around an annulus on three tracks, ``clasps[i]`` crossings in box i.

    Box types alternate L, U, L, ... unless ``kinds`` is given.  Crossings are
    labelled box by box, top to bottom within each clasp.
    """
    clasps = list(clasps)
    kinds = list(kinds) if kinds is not None else box_kinds(len(clasps))
    if len(kinds) != len(clasps) or not clasps:
        raise FamilyError("need one box type per box")
    nb = len(clasps)
    parent: dict[tuple, tuple] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    # gap g sits between box g and box g+1; box i reads gap i-1 on its left
    def gap(g, y):
        return ("gap", g % nb, y)

    pieces = []
    for i, (kind, c) in enumerate(zip(kinds, clasps)):
        lo, hi, passing = box_tracks(kind)
        union(gap(i - 1, passing), gap(i, passing))
        if c == 0:
            union(gap(i - 1, lo), gap(i - 1, hi))
            union(gap(i, lo), gap(i, hi))
            continue
        v = vertical_twist(c).fresh_copy()
        nw, sw, se, ne = v.legs
        ends = {nw: gap(i - 1, hi), sw: gap(i - 1, lo), se: gap(i, lo), ne: gap(i, hi)}
        pieces.append((v, ends))
    ids: dict[tuple, int] = {}
    pd = []
    for v, ends in pieces:
        for cr in v.crossings:
            row = []
            for e in cr:
                if e in ends:
                    key = find(ends[e])
                    row.append(ids.setdefault(key, len(ids) + 10**6))
                else:
                    row.append(e)
            pd.append(tuple(row))
    if not pd:
        return TRIVIAL
    return _closed(pd)


def box_labels(clasps: Sequence[int]) -> list[list[int]]:
    """Labels of each box's crossings in :func:`box_chain`, top to bottom."""
    out, nxt = [], 1
    for c in clasps:
        out.append(list(range(nxt, nxt + c)))
        nxt += c
    return out


def p_family(m: int, n: int) -> PlaneCurve:
    """P(m, n): 2n alternating boxes, each a clasp of 2m crossings."""
    if m < 1 or n < 2:
        raise FamilyError("P(m, n) needs m >= 1 and n >= 2")
    return box_chain([2 * m] * (2 * n))


def p_family_boxes(m: int, n: int) -> list[Tangle]:
    """The 2n box tangles of P(m, n), each with six legs."""
    return [box_tangle(kind, 2 * m) for kind in box_kinds(2 * n)]


def _hy_path() -> list[tuple[float, float]]:
    """Waypoints (angle, radius) of the 16-crossing curve P(1, 4), drawn by hand.

    Eight boxes sit at angles 45 i degrees.  Inside a box the clasping strands
    are U-turns; strands are stitched into one closed path by matching
    endpoints.
    """
    nb = 8
    pieces = []

    def at(i, u, v):
        return (2 * math.pi * (i + 0.1 + 0.8 * u) / nb, v)

    for i in range(nb):
        lo, hi, passing = box_tracks("L" if i % 2 == 0 else "U")
        pieces.append([at(i, 0, passing), at(i, 0.5, passing), at(i, 1, passing)])
        pieces.append([at(i, 0, lo), at(i, 0.1, lo + 0.2), at(i, 0.65, lo + 0.2),
                       at(i, 0.65, hi - 0.2), at(i, 0.1, hi - 0.2), at(i, 0, hi)])
        pieces.append([at(i, 1, lo), at(i, 0.9, lo + 0.35), at(i, 0.35, lo + 0.35),
                       at(i, 0.35, hi - 0.35), at(i, 0.9, hi - 0.35), at(i, 1, hi)])
        for y in (1, 2, 3):
            pieces.append([at(i, 1, y), (2 * math.pi * (i + 1) / nb, y), at(i + 1, 0, y)])
    return _stitch(pieces)


def _stitch(pieces):
    def key(p):
        a, r = p
        return (round(math.cos(a) * r, 6), round(math.sin(a) * r, 6))

    ends: dict = {}
    for idx, pc in enumerate(pieces):
        ends.setdefault(key(pc[0]), []).append((idx, 0))
        ends.setdefault(key(pc[-1]), []).append((idx, 1))
    path = []
    idx, rev = 0, False
    used = set()
    while idx not in used:
        used.add(idx)
        pc = pieces[idx][::-1] if rev else pieces[idx]
        path.extend(pc[:-1])
        nxt = [e for e in ends[key(pc[-1])] if e[0] != idx]
        if len(nxt) != 1:
            raise FamilyError("box pieces do not stitch into a closed path")
        idx, side = nxt[0]
        rev = side == 1
    if len(used) != len(pieces):
        raise FamilyError("box pieces form more than one closed path")
    return path


def hagge_yazinski() -> PlaneCurve:
    """The 16-crossing curve P(1, 4), computed from an explicit drawing."""
    return curve_from_polyline(polar_polyline(_hy_path(), samples=4))


# -- family specifications --------------------------------------------


def parse_family(spec: str) -> PlaneCurve:
    """Build a curve from ``name`` or ``name:params``.

    Names: ``trivial``, ``kinks:k``, ``torus:p``, ``pretzel:a1,a2,...``,
    ``twobridge:a1,...``, ``pfamily:m,n``, ``hy``.
    """
    name, _, rest = spec.strip().partition(":")
    name = name.strip().lower().replace("_", "").replace("-", "")
    try:
        args = [int(x) for x in re.split(r"[,\s]+", rest.strip())] if rest.strip() else []
    except ValueError:
        raise FamilyError(f"bad parameters in {spec!r}") from None
    builders = {
        "trivial": (0, lambda: trivial()),
        "kinks": (1, lambda k: kink_chain(k)),
        "torus": (1, lambda p: torus_2q(p)),
        "pretzel": (None, lambda *a: pretzel(a)),
        "twobridge": (None, lambda *a: two_bridge(a)),
        "pfamily": (2, lambda m, n: p_family(m, n)),
        "hy": (0, lambda: hagge_yazinski()),
    }
    if name not in builders:
        raise FamilyError(f"unknown family {name!r}; expected one of {', '.join(builders)}")
    arity, build = builders[name]
    if arity is not None and len(args) != arity:
        raise FamilyError(f"{name} takes {arity} parameter(s), got {len(args)}")
    if arity is None and not args:
        raise FamilyError(f"{name} needs at least one parameter")
    return build(*args)
