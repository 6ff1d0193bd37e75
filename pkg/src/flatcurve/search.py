"""Budgeted searches over the graph of curves and flat moves.

States are canonical forms (mirror-inclusive by default), so two curves that
differ by a homeomorphism of the sphere are one state.  Moves are generated
directly on visit sequences for speed; witnesses are rebuilt afterwards as
ordinary :class:`Trace` objects on the caller's curve and checked by replay.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import product

from .curve import (
    TRIVIAL,
    PlaneCurve,
    _tokens_for,
    canonical_form,
    canonical_key,
    curve_from_canonical_form,
    gauss_even,
    validate,
)
from .moves import (
    FULL_POLICY,
    HOMOTOPY_13,
    MoveKind,
    MovePolicy,
    Trace,
    apply_move,
    enumerate_moves,
)

CENSUS_LIMIT = 6


class SearchError(ValueError):
    """Invalid search input (for instance a curve over the crossing budget)."""


class Outcome(str, Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted_no_solution"
    CAPS_HIT = "caps_hit"
    CONNECTED = "connected"
    NOT_CONNECTED = "not_connected_within_budget"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SearchConfig:
    """Limits of a search.

    ``crossing_budget`` bounds every intermediate curve; ``state_cap`` bounds
    the number of distinct states discovered; ``cost_cap`` bounds the number of
    negative type 2 moves; ``time_limit`` (seconds, optional) stops the search
    with ``caps_hit``.
    """

    crossing_budget: int
    state_cap: int = 1_000_000
    cost_cap: int | None = None
    policy: MovePolicy = FULL_POLICY
    mirror: bool = True
    time_limit: float | None = None

    def __post_init__(self):
        if self.state_cap < 1:
            raise SearchError("state_cap must be at least 1")
        if self.crossing_budget < 0:
            raise SearchError("crossing_budget must be non-negative")


@dataclass
class SearchResult:
    outcome: Outcome
    value: int | None = None
    witness: Trace | None = None
    states_explored: int = 0
    states_discovered: int = 0
    max_frontier: int = 0
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome in (Outcome.FOUND, Outcome.CONNECTED)

    def to_json(self) -> dict:
        return {
            "outcome": str(self.outcome),
            "value": self.value,
            "states_explored": self.states_explored,
            "states_discovered": self.states_discovered,
            "max_frontier": self.max_frontier,
            "elapsed": round(self.elapsed, 3),
            "witness": self.witness.to_json() if self.witness is not None else None,
        }

    def summary(self) -> str:
        lines = [f"outcome: {self.outcome}"]
        if self.value is not None:
            lines.append(f"negative-2 moves: {self.value}")
        lines.append(f"states explored: {self.states_explored}")
        lines.append(f"states discovered: {self.states_discovered}")
        if self.witness is not None:
            lines.append(f"witness steps: {len(self.witness)}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# move generation on canonical forms
#
# A form lists, per visit, 2 * (forward distance to the partner visit) plus
# the local bit (1 when the partner crosses this visit from right to left).


def _decode(form):
    n2 = len(form)
    partner = [(i + (c >> 1)) % n2 for i, c in enumerate(form)]
    bits = [c & 1 for c in form]
    return partner, bits


def _faces(partner, bits):
    """Faces as lists of darts; dart 2i is visit i outgoing, 2i+1 visit i incoming."""
    n2 = len(partner)
    seen = [False] * (2 * n2)
    faces = []
    for start in range(2 * n2):
        if seen[start]:
            continue
        face = []
        d = start
        while not seen[d]:
            seen[d] = True
            face.append(d)
            i, incoming = d >> 1, d & 1
            # across the edge
            if incoming:
                j, t = (i - 1) % n2, 0
            else:
                j, t = (i + 1) % n2, 1
            # counterclockwise turn at the crossing
            d = 2 * partner[j] + (t if bits[j] else 1 - t)
        faces.append(face)
    return faces


def _edge_of(d, n2):
    i = d >> 1
    return i if not d & 1 else (i - 1) % n2


def _children(form, policy: MovePolicy, budget: int, mirror: bool):
    """(kind, child form) pairs for every applicable move within the budget."""
    n2 = len(form)
    if n2 == 0:
        if MoveKind.R1_PLUS in policy and budget >= 1:
            for c in (1, -1):
                yield MoveKind.R1_PLUS, canonical_form((1, -1), {1: c}, mirror)
        return
    partner, bits = _decode(form)
    # tokens: label = index of the first visit + 1; sign by first/second visit
    tokens = [0] * n2
    chir = {}
    for i in range(n2):
        j = partner[i]
        if i < j:
            tokens[i], tokens[j] = i + 1, -(i + 1)
            chir[i + 1] = 1 if bits[i] else -1
    nv = n2 // 2
    if MoveKind.R1_PLUS in policy and nv + 1 <= budget:
        x = n2 + 1
        for e in range(n2):
            head, tail = tokens[: e + 1], tokens[e + 1 :]
            for c in (1, -1):
                chir[x] = c
                yield MoveKind.R1_PLUS, canonical_form(head + [x, -x] + tail, chir, mirror)
        del chir[x]
    for face in _faces(partner, bits):
        deg = len(face)
        if deg > 3:
            continue
        edges = [_edge_of(d, n2) for d in face]
        verts = {min(d >> 1, partner[d >> 1]) for d in face}
        if deg == 1 and MoveKind.R1_MINUS in policy:
            e = edges[0]
            drop = {e, (e + 1) % n2}
        elif deg == 2 and len(verts) == 2 and MoveKind.R2_MINUS in policy:
            drop = {p for e in edges for p in (e, (e + 1) % n2)}
        elif deg == 3 and len(verts) == 3 and MoveKind.R3 in policy:
            t = list(tokens)
            for e in edges:
                f = (e + 1) % n2
                t[e], t[f] = t[f], t[e]
            yield MoveKind.R3, canonical_form(t, chir, mirror)
            continue
        else:
            continue
        kind = MoveKind.R1_MINUS if deg == 1 else MoveKind.R2_MINUS
        t = [x for i, x in enumerate(tokens) if i not in drop]
        yield kind, canonical_form(t, chir, mirror)


def _form(curve: PlaneCurve, mirror: bool):
    return canonical_form(curve.tokens, curve.chirality, mirror)


def _realize(curve: PlaneCurve, path, mirror: bool) -> Trace:
    """Turn a chain of (kind, form) hops into concrete moves starting at ``curve``."""
    steps = []
    cur = curve
    for kind, target in path:
        for move in enumerate_moves(cur, FULL_POLICY):
            if move.kind is not kind:
                continue
            nxt = apply_move(cur, move)
            if _form(nxt, mirror) == target:
                steps.append(move)
                cur = nxt
                break
        else:  # pragma: no cover - would mean the two move generators disagree
            raise RuntimeError(f"could not realize a {kind} hop")
    return Trace(curve, steps, cur)


def _check_input(curve: PlaneCurve, config: SearchConfig):
    report = validate(curve)
    if not report.ok:
        raise SearchError("invalid curve: " + "; ".join(report.violations))
    if curve.num_vertices > config.crossing_budget:
        raise SearchError(
            f"curve has {curve.num_vertices} crossings, over the budget {config.crossing_budget}"
        )


# ---------------------------------------------------------------------------
# RII upper bounds


def rii_bounded(curve: PlaneCurve, config: SearchConfig) -> SearchResult:
    """Fewest negative type 2 moves reducing ``curve`` to the trivial curve, within limits.

    0-1 breadth-first search: type 1 and 3 moves cost 0, negative type 2
    moves cost 1.  A found value is exact among sequences that stay within
    the crossing budget (and cost cap); it is an upper bound for the
    unrestricted minimum.
    """
    _check_input(curve, config)
    t0 = time.monotonic()
    mirror = config.mirror
    start = _form(curve, mirror)
    goal = ()
    dist = {start: 0}
    parent: dict = {start: None}
    done = set()
    dq = deque([start])
    capped = False
    max_frontier = 1
    cost_cap = config.cost_cap
    hit = None
    while dq:
        s = dq.popleft()
        if s in done:
            continue
        d = dist[s]
        if s == goal:
            hit = s
            break
        done.add(s)
        if config.time_limit is not None and time.monotonic() - t0 > config.time_limit:
            capped = True
            break
        kids = sorted(_children(s, config.policy, config.crossing_budget, mirror), key=lambda kc: -len(kc[1]))
        for kind, child in kids:
            w = 1 if kind is MoveKind.R2_MINUS else 0
            nd = d + w
            if cost_cap is not None and nd > cost_cap:
                continue
            old = dist.get(child)
            if old is None and len(dist) >= config.state_cap:
                capped = True
                continue
            if old is None or nd < old:
                dist[child] = nd
                parent[child] = (s, kind)
                if w:
                    dq.append(child)
                else:
                    dq.appendleft(child)
        if goal in dist and dist[goal] == d:
            hit = goal
            break
        max_frontier = max(max_frontier, len(dq))
    elapsed = time.monotonic() - t0
    common = dict(states_explored=len(done), states_discovered=len(dist), max_frontier=max_frontier)
    # after a cap a positive value may not be minimal; zero always is
    if hit is None or (capped and dist[goal] > 0):
        outcome = Outcome.CAPS_HIT if capped else Outcome.EXHAUSTED
        return SearchResult(outcome, elapsed=elapsed, **common)
    path = []
    s = goal
    while parent[s] is not None:
        p, kind = parent[s]
        path.append((kind, s))
        s = p
    path.reverse()
    witness = _realize(curve, path, mirror)
    return SearchResult(Outcome.FOUND, dist[goal], witness, elapsed=elapsed, **common)


# ---------------------------------------------------------------------------
# (1, 3) connectivity


_INVERSE = {MoveKind.R1_PLUS: MoveKind.R1_MINUS, MoveKind.R1_MINUS: MoveKind.R1_PLUS, MoveKind.R3: MoveKind.R3}


def reachable_13(a: PlaneCurve, b: PlaneCurve, config: SearchConfig) -> SearchResult:
    """Bidirectional search for a type 1 and 3 sequence from ``a`` to ``b``.

    The side with the smaller frontier is expanded first.  If either side runs
    out of states without having hit a cap, the curves are not connected
    within the crossing budget.
    """
    _check_input(a, config)
    _check_input(b, config)
    t0 = time.monotonic()
    mirror = config.mirror
    policy = MovePolicy(config.policy.allowed & HOMOTOPY_13.allowed)
    fa, fb = _form(a, mirror), _form(b, mirror)
    parents = [{fa: None}, {fb: None}]
    frontiers = [[fa], [fb]]
    capped = [False, False]
    explored = 0
    max_frontier = 1
    meet = fa if fa == fb else None
    timed_out = False
    while meet is None:
        live = [i for i in (0, 1) if frontiers[i]]
        if len(live) < 2:
            break
        side = min(live, key=lambda i: len(frontiers[i]))
        mine, other = parents[side], parents[1 - side]
        nxt = []
        for s in frontiers[side]:
            explored += 1
            if config.time_limit is not None and time.monotonic() - t0 > config.time_limit:
                timed_out = True
                break
            for kind, child in _children(s, policy, config.crossing_budget, mirror):
                if child in mine:
                    continue
                if len(parents[0]) + len(parents[1]) >= config.state_cap:
                    capped[side] = True
                    continue
                mine[child] = (s, kind)
                nxt.append(child)
                if child in other:
                    meet = child
                    break
            if meet is not None or timed_out:
                break
        frontiers[side] = nxt
        max_frontier = max(max_frontier, len(nxt))
        if timed_out:
            break
    elapsed = time.monotonic() - t0
    common = dict(
        states_explored=explored,
        states_discovered=len(parents[0]) + len(parents[1]),
        max_frontier=max_frontier,
        elapsed=elapsed,
    )
    if meet is not None:
        hops = []
        s = meet
        while parents[0][s] is not None:
            p, kind = parents[0][s]
            hops.append((kind, s))
            s = p
        hops.reverse()
        s = meet
        while parents[1][s] is not None:
            p, kind = parents[1][s]
            hops.append((_INVERSE[kind], p))
            s = p
        witness = _realize(a, hops, mirror)
        return SearchResult(Outcome.CONNECTED, 0, witness, **common)
    exhausted = [i for i in (0, 1) if not frontiers[i] and not capped[i]]
    if exhausted and not timed_out:
        return SearchResult(Outcome.NOT_CONNECTED, stats={"exhausted_side": "ab"[exhausted[0]]}, **common)
    return SearchResult(Outcome.CAPS_HIT, **common)


# ---------------------------------------------------------------------------
# census


def _matchings(n: int):
    """Double-occurrence words on labels 1..n with labels in order of first appearance."""
    word = [0] * (2 * n)

    def rec(label):
        if label > n:
            yield tuple(word)
            return
        i = word.index(0)
        word[i] = label
        for j in range(i + 1, 2 * n):
            if word[j] == 0:
                word[j] = label
                yield from rec(label + 1)
                word[j] = 0
        word[i] = 0

    yield from rec(1)


def census(max_crossings: int = 4, limit: int = CENSUS_LIMIT) -> list[tuple[bytes, PlaneCurve]]:
    """Every curve with at most ``max_crossings`` crossings, one per class.

    Classes are up to homeomorphism of the sphere including reflections.
    Sorted by crossing count, then key.
    """
    if max_crossings > limit:
        raise SearchError(f"census is limited to {limit} crossings (asked for {max_crossings})")
    found: dict[bytes, PlaneCurve] = {canonical_key(TRIVIAL): TRIVIAL}
    for n in range(1, max_crossings + 1):
        for word in _matchings(n):
            if not gauss_even(word):
                continue
            tokens = _tokens_for(word)
            # the mirror of any realization is another; fix crossing 1
            for bits in product((1, -1), repeat=n - 1):
                chir = {1: 1, **{x: s for x, s in zip(range(2, n + 1), bits)}}
                curve = PlaneCurve(tokens, chir)
                if not validate(curve).ok:
                    continue
                key = canonical_key(curve)
                if key not in found:
                    found[key] = curve_from_canonical_form(canonical_form(curve.tokens, curve.chirality))
    return sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0]))
