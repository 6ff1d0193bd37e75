"""Plane curves from explicit closed polylines."""

from __future__ import annotations

import math
from typing import Sequence

from .curve import CurveError, PlaneCurve, TRIVIAL

Point = tuple[float, float]


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _intersect(p, q, r, s):
    """Parameters (t, u) where segment p->q meets r->s, or None."""
    dx1, dy1 = q[0] - p[0], q[1] - p[1]
    dx2, dy2 = s[0] - r[0], s[1] - r[1]
    den = _cross(dx1, dy1, dx2, dy2)
    if abs(den) < 1e-15:
        return None
    ex, ey = r[0] - p[0], r[1] - p[1]
    t = _cross(ex, ey, dx2, dy2) / den
    u = _cross(ex, ey, dx1, dy1) / den
    if 0.0 <= t < 1.0 and 0.0 <= u < 1.0:
        return t, u
    return None


def curve_from_polyline(points: Sequence[Point]) -> PlaneCurve:
    """Signed Gauss word of a closed polyline in general position.

    The polyline is closed implicitly (last point joins the first).  Double
    points must be transverse and lie in segment interiors.
    """
    pts = [tuple(map(float, p)) for p in points]
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    n = len(pts)
    if n < 3:
        raise CurveError("a closed polyline needs at least three points")
    segs = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    boxes = []
    for p, q in segs:
        boxes.append((min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1])))
    visits = []  # (curve parameter, crossing id, direction)
    label = 0
    for i in range(n):
        bi = boxes[i]
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            hit = _intersect(*segs[i], *segs[j])
            if hit is None:
                continue
            t, u = hit
            if min(t, u) < 1e-9 or max(t, u) > 1 - 1e-9:
                raise CurveError("polyline is not in general position")
            label += 1
            di = (segs[i][1][0] - segs[i][0][0], segs[i][1][1] - segs[i][0][1])
            dj = (segs[j][1][0] - segs[j][0][0], segs[j][1][1] - segs[j][0][1])
            visits.append((i + t, label, di))
            visits.append((j + u, label, dj))
    if not visits:
        return TRIVIAL
    visits.sort()
    first_dir: dict[int, tuple[float, float]] = {}
    tokens = []
    chir = {}
    for _, x, d in visits:
        if x not in first_dir:
            first_dir[x] = d
            tokens.append(x)
        else:
            tokens.append(-x)
            d1 = first_dir[x]
            # second visit crossing the first from right to left
            chir[x] = 1 if _cross(d1[0], d1[1], d[0], d[1]) > 0 else -1
    return PlaneCurve(tokens, chir)


def polar_polyline(path: Sequence[tuple[float, float]], samples: int = 6) -> list[Point]:
    """Resample a closed path given in (angle, radius) and map it to the plane."""
    out = []
    m = len(path)
    for i in range(m):
        (a0, r0), (a1, r1) = path[i], path[(i + 1) % m]
        if a1 - a0 > math.pi:
            a1 -= 2 * math.pi
        elif a0 - a1 > math.pi:
            a1 += 2 * math.pi
        for k in range(samples):
            f = k / samples
            a = a0 + (a1 - a0) * f
            r = r0 + (r1 - r0) * f
            out.append((r * math.cos(a), r * math.sin(a)))
    return out
