"""Planar drawings of curves (SVG and Graphviz DOT).

The layout is a Tutte barycentric embedding of the curve's map after
subdividing every edge twice and adding a node per face joined to that face's
corners.  The boundary of the largest face is pinned to a circle.
"""

from __future__ import annotations

import math

import numpy as np

from .curve import PlaneCurve, validate, CurveError


def _graph(curve: PlaneCurve):
    """Nodes and weighted adjacency of the subdivided map, plus the outer cycle."""
    n2 = len(curve.tokens)
    nodes = [("v", x) for x in curve.labels]
    nodes += [("e", i, s) for i in range(n2) for s in (0, 1)]
    faces = list(curve.faces)
    outer = max(faces, key=lambda f: (f.degree, -f.index))
    nodes += [("f", f.index) for f in faces if f is not outer]
    index = {nd: i for i, nd in enumerate(nodes)}
    adj: dict[int, dict[int, float]] = {i: {} for i in range(len(nodes))}

    def link(a, b):
        i, j = index[a], index[b]
        adj[i][j] = adj[i].get(j, 0) + 1
        adj[j][i] = adj[j].get(i, 0) + 1

    for i in range(n2):
        a, b = curve.word[i], curve.word[(i + 1) % n2]
        link(("v", a), ("e", i, 0))
        link(("e", i, 0), ("e", i, 1))
        link(("e", i, 1), ("v", b))
    cycle = []
    for f in faces:
        corners = []
        for d in f.darts:
            pos, outgoing = curve.dart_position[d]
            e = pos if outgoing else (pos - 1) % n2
            v = ("v", curve.dart_vertex(d))
            # walking the face: vertex, then the edge's two subdivision nodes
            pair = [("e", e, 0), ("e", e, 1)] if outgoing else [("e", e, 1), ("e", e, 0)]
            corners += [v] + pair
        if f is outer:
            cycle = corners
        else:
            for c in corners:
                link(("f", f.index), c)
    return nodes, index, adj, cycle


def layout(curve: PlaneCurve) -> dict:
    """Positions for crossings (``("v", label)``) and edge points (``("e", i, s)``)."""
    report = validate(curve)
    if not report.ok:
        raise CurveError("; ".join(report.violations))
    if curve.is_trivial:
        return {}
    nodes, index, adj, cycle = _graph(curve)
    pinned = {}
    seen = []
    for c in cycle:
        if c not in seen:
            seen.append(c)
    for k, c in enumerate(seen):
        a = 2 * math.pi * k / len(seen)
        pinned[index[c]] = (math.cos(a), math.sin(a))
    n = len(nodes)
    free = [i for i in range(n) if i not in pinned]
    pos_free = {i: k for k, i in enumerate(free)}
    m = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for i in free:
        r = pos_free[i]
        for j, w in adj[i].items():
            m[r, r] += w
            if j in pinned:
                rhs[r] += w * np.array(pinned[j])
            else:
                m[r, pos_free[j]] -= w
    sol = np.linalg.solve(m, rhs) if free else np.zeros((0, 2))
    out = {}
    for i, nd in enumerate(nodes):
        if i in pinned:
            out[nd] = pinned[i]
        elif nd[0] != "f":
            out[nd] = tuple(sol[pos_free[i]])
    return out


def to_svg(curve: PlaneCurve, size: int = 400) -> str:
    """An SVG drawing; every crossing carries a ``crossing`` marker."""
    pad = 20
    scale = (size - 2 * pad) / 2

    def xy(p):
        return (pad + (p[0] + 1) * scale, pad + (1 - p[1]) * scale)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    if curve.is_trivial:
        c = size / 2
        parts.append(f'<circle cx="{c}" cy="{c}" r="{scale:.1f}" fill="none" stroke="black"/>')
    else:
        pos = layout(curve)
        n2 = len(curve.tokens)
        pts = []
        for i in range(n2):
            pts.append(xy(pos[("v", curve.word[i])]))
            pts.append(xy(pos[("e", i, 0)]))
            pts.append(xy(pos[("e", i, 1)]))
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        parts.append(f'<polygon points="{path}" fill="none" stroke="black" stroke-linejoin="round"/>')
        for x in curve.labels:
            cx, cy = xy(pos[("v", x)])
            parts.append(f'<circle class="crossing" cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="red"><title>{x}</title></circle>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def to_dot(curve: PlaneCurve) -> str:
    """Graphviz source with crossings as nodes and curve edges as edges, with layout positions."""
    lines = ["graph curve {", "  node [shape=point];"]
    if curve.is_trivial:
        lines.append('  circle [shape=circle, label=""];')
    else:
        pos = layout(curve)
        for x in curve.labels:
            px, py = pos[("v", x)]
            lines.append(f'  v{x} [label="{x}", pos="{px * 3:.3f},{py * 3:.3f}!"];')
        n2 = len(curve.tokens)
        for i in range(n2):
            lines.append(f"  v{curve.word[i]} -- v{curve.word[(i + 1) % n2]} [label=\"e{i}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
