"""Flat tangles in a disk, assembled from crossings in planar-diagram form.

Every crossing lists the edges on its four arms in counterclockwise order;
arms ``i`` and ``i + 2`` belong to the same strand.  A tangle additionally
lists its boundary legs in counterclockwise order around the disk.  The
four-ended tangles used for twists keep their legs in the order
``NW, SW, SE, NE``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Sequence

from .curve import CurveError, PlaneCurve, TRIVIAL

_ids = count(1)


def _fresh() -> int:
    return next(_ids)


@dataclass(frozen=True)
class Tangle:
    """Crossings ``(arm0, arm1, arm2, arm3)`` plus boundary legs, counterclockwise."""

    crossings: tuple[tuple[int, int, int, int], ...]
    legs: tuple[int, ...]

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def renamed(self, mapping: dict[int, int]) -> "Tangle":
        def r(e):
            return mapping.get(e, e)

        return Tangle(
            tuple(tuple(r(e) for e in c) for c in self.crossings),
            tuple(r(e) for e in self.legs),
        )

    def fresh_copy(self) -> "Tangle":
        edges = {e for c in self.crossings for e in c} | set(self.legs)
        return self.renamed({e: _fresh() for e in edges})

    def strands(self) -> int:
        return len(self.legs) // 2

    def euler_characteristic(self) -> int:
        """Euler characteristic of the tangle's map in the disk; 1 when it is a planar disk map."""
        c, nl = len(self.crossings), len(self.legs)
        # collapse the outside of the disk to one vertex; the disk map is planar iff that sphere map is
        faces = _sphere_faces(self)
        return (c + 1) - (4 * c + nl) // 2 + faces - 1

    def connectivity(self) -> dict[int, int]:
        """Leg index -> leg index joined to it by a strand."""
        ends = _edge_ends(self)
        out = {}
        for i, leg in enumerate(self.legs):
            where = [x for x in ends[leg] if x[0] != "leg" or x[1] != i]
            node = where[0]
            while node[0] != "leg":
                c, a = node
                e = self.crossings[c][(a + 2) % 4]
                node = [x for x in ends[e] if x != (c, (a + 2) % 4)][0]
            out[i] = node[1]
        return out


def _edge_ends(t: Tangle) -> dict[int, list]:
    ends: dict[int, list] = {}
    for ci, c in enumerate(t.crossings):
        for a, e in enumerate(c):
            ends.setdefault(e, []).append((ci, a))
    for i, e in enumerate(t.legs):
        ends.setdefault(e, []).append(("leg", i))
    return ends


def _sphere_faces(t: Tangle) -> int:
    """Faces of the map with all legs joined at one outer vertex."""
    nl = len(t.legs)
    rot_size = [4] * len(t.crossings) + [nl]
    inf = len(t.crossings)
    ends = _edge_ends(t)

    def as_dart(end):
        if end[0] == "leg":
            # counterclockwise around the outer vertex is clockwise around the disk
            return (inf, (nl - 1 - end[1]) % nl) if nl else None
        return end

    alpha = {}
    for e, where in ends.items():
        a, b = (as_dart(x) for x in where)
        alpha[a] = b
        alpha[b] = a
    seen = set()
    faces = 0
    for d in alpha:
        if d in seen:
            continue
        faces += 1
        while d not in seen:
            seen.add(d)
            v, p = alpha[d]
            d = (v, (p + 1) % rot_size[v])
    return faces


def crossing() -> Tangle:
    arms = tuple(_fresh() for _ in range(4))
    return Tangle((arms,), arms)


def _glue(t1: Tangle, t2: Tangle, pairs: Sequence[tuple[int, int]]) -> tuple[tuple, dict]:
    """Identify leg ``i`` of t1 with leg ``j`` of t2 for each pair."""
    t2 = t2.fresh_copy() if set(_all_edges(t1)) & set(_all_edges(t2)) else t2
    mapping = {}
    for i, j in pairs:
        mapping[t2.legs[j]] = t1.legs[i]
    t2r = t2.renamed(mapping)
    return t1.crossings + t2r.crossings, t2r


def _all_edges(t: Tangle):
    return {e for c in t.crossings for e in c} | set(t.legs)


NW, SW, SE, NE = range(4)


def add(t1: Tangle, t2: Tangle) -> Tangle:
    """Horizontal sum: t1 on the left, t2 on the right."""
    crossings, t2r = _glue(t1, t2, [(NE, NW), (SE, SW)])
    return Tangle(crossings, (t1.legs[NW], t1.legs[SW], t2r.legs[SE], t2r.legs[NE]))


def stack(t1: Tangle, t2: Tangle) -> Tangle:
    """Vertical product: t1 above t2."""
    crossings, t2r = _glue(t1, t2, [(SW, NW), (SE, NE)])
    return Tangle(crossings, (t1.legs[NW], t2r.legs[SW], t2r.legs[SE], t1.legs[NE]))


def rotate(t: Tangle) -> Tangle:
    """Quarter turn counterclockwise."""
    nw, sw, se, ne = t.legs
    return Tangle(t.crossings, (ne, nw, sw, se))


def horizontal_twist(k: int) -> Tangle:
    if k < 1:
        raise ValueError("a twist needs at least one crossing")
    t = crossing()
    for _ in range(k - 1):
        t = add(t, crossing())
    return t


def vertical_twist(k: int) -> Tangle:
    if k < 1:
        raise ValueError("a twist needs at least one crossing")
    t = crossing()
    for _ in range(k - 1):
        t = stack(t, crossing())
    return t


def _close(t: Tangle, pairs) -> list[tuple[int, int, int, int]]:
    mapping = {}
    for i, j in pairs:
        mapping[t.legs[j]] = t.legs[i]
    return list(t.renamed(mapping).crossings)


def numerator(t: Tangle) -> list[tuple[int, int, int, int]]:
    """Close with arcs NW-NE and SW-SE."""
    return _close(t, [(NW, NE), (SW, SE)])


def denominator(t: Tangle) -> list[tuple[int, int, int, int]]:
    """Close with arcs NW-SW and NE-SE."""
    return _close(t, [(NW, SW), (NE, SE)])


def curve_from_pd(crossings: Sequence[Sequence[int]], labels: Sequence[int] | None = None) -> PlaneCurve:
    """Trace a closed planar diagram into a PlaneCurve.

    Crossing ``i`` receives label ``labels[i]`` (default ``i + 1``).
    """
    if not crossings:
        return TRIVIAL
    labels = list(labels) if labels is not None else list(range(1, len(crossings) + 1))
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(crossings):
        for a, e in enumerate(c):
            ends.setdefault(e, []).append((ci, a))
    for e, where in ends.items():
        if len(where) != 2:
            raise CurveError(f"edge {e} has {len(where)} ends; the diagram is not closed")
    entry: dict[int, list[int]] = {}
    tokens = []
    ci, a = 0, 0
    start = (0, 2)
    exit_ = start
    while True:
        c, x = exit_
        e = crossings[c][x]
        other = [w for w in ends[e] if w != (c, x)]
        nc, na = other[0] if other else (c, x)
        seen = entry.setdefault(nc, [])
        seen.append(na)
        tokens.append(labels[nc] if len(seen) == 1 else -labels[nc])
        exit_ = (nc, (na + 2) % 4)
        if exit_ == start:
            break
        if len(tokens) > 2 * len(crossings):
            raise CurveError("diagram traversal did not close")
    if len(tokens) != 2 * len(crossings) or any(len(v) != 2 for v in entry.values()):
        raise CurveError("diagram has more than one component")
    chir = {}
    for c, (p1, p2) in entry.items():
        chir[labels[c]] = 1 if p2 == (p1 + 1) % 4 else -1
    return PlaneCurve(tokens, chir)
