"""Explicit reductions of the curve families to the trivial curve.

Each reduction returns a :class:`Trace` built from verified local moves.  The
only negative type 2 moves used are the ones that erase the first box of
P(m, n); everything else is type 1 and 3.
"""

from __future__ import annotations

from typing import Sequence

from .curve import PlaneCurve
from .generators import FamilyError, box_labels, p_family, pretzel, torus_2q, two_bridge
from .macros import PatternError, absorb, find_tangle_occurrences, rotate_twist, twist_order
from .moves import Move, MoveKind, Trace, apply_move


class ReductionError(RuntimeError):
    """A reduction got stuck; the family is outside the supported range."""


class _Builder:
    def __init__(self, curve: PlaneCurve):
        self.initial = curve
        self.curve = curve
        self.steps: list[Move] = []

    def extend(self, trace: Trace):
        self.steps.extend(trace.steps)
        self.curve = trace.claimed_final

    def move(self, move: Move):
        self.curve = apply_move(self.curve, move)
        self.steps.append(move)

    def trace(self) -> Trace:
        return Trace(self.initial, list(self.steps), self.curve)

    def labels(self, group) -> list[int]:
        present = set(self.curve.word)
        return [x for x in group if x in present]

    def rotate(self, labels):
        order = twist_order(self.curve, labels)
        if order is None:
            raise ReductionError(f"crossings {sorted(labels)} are not a twist")
        self.extend(rotate_twist(self.curve, order))

    def absorb_into(self, twist_labels, candidates) -> bool:
        """Absorb one crossing from ``candidates`` into the twist; False if none fits."""
        order = twist_order(self.curve, twist_labels)
        if order is None:
            raise ReductionError(f"crossings {sorted(twist_labels)} are not a twist")
        k = len(order)
        for site in find_tangle_occurrences(self.curve, k):
            if set(site.twist) == set(order) and site.extra in candidates:
                self.extend(absorb(self.curve, site.twist, site.extra))
                return True
        return False

    def drop_kinks(self):
        while not self.curve.is_trivial:
            mono = [f for f in self.curve.faces if f.degree == 1]
            if not mono:
                return
            self.move(Move(MoveKind.R1_MINUS, mono[0].index))

    def finish_twist(self):
        """Reduce a curve that is a single twist closed up: kinks directly, or rotate first."""
        self.drop_kinks()
        if self.curve.is_trivial:
            return
        self.rotate(self.curve.labels)
        self.drop_kinks()
        if not self.curve.is_trivial:
            raise ReductionError("the closed twist did not reduce to the trivial curve")


def reduce_torus(p: int) -> Trace:
    """Rotate the (2, 2p+1) twist, leaving 2p+1 kinks, then remove them."""
    b = _Builder(torus_2q(p))
    b.rotate(range(1, 2 * p + 2))
    b.drop_kinks()
    return b.trace()


def _groups(sizes: Sequence[int]) -> list[list[int]]:
    out, nxt = [], 1
    for a in sizes:
        out.append(list(range(nxt, nxt + a)))
        nxt += a
    return out


def reduce_pretzel(a: Sequence[int]) -> Trace:
    """Type 1 and 3 reduction of a pretzel projection.

    Odd twists are rotated so that they merge into one horizontal twist.  With
    all twists odd the curve becomes a torus projection; otherwise the merged
    twist is absorbed crossing by crossing into the even twist.
    """
    a = list(a)
    b = _Builder(pretzel(a))
    groups = _groups(a)
    even = [g for g, x in zip(groups, a) if x % 2 == 0]
    for g, x in zip(groups, a):
        if x % 2:
            b.rotate(g)
    if even:
        (target,) = even
        rest = {x for g in groups if g is not target for x in g}
        while set(b.curve.word) & rest:
            if not b.absorb_into(target, rest & set(b.curve.word)):
                raise ReductionError("no crossing can be absorbed into the even twist")
    b.finish_twist()
    return b.trace()


def reduce_two_bridge(a: Sequence[int]) -> Trace:
    """Type 1 and 3 reduction of C(a1, ..., an), innermost twist first.

    An odd innermost twist is rotated and merges with the next one; an even
    innermost twist absorbs the next twist crossing by crossing, after which
    it merges with the twist beyond.
    """
    a = list(a)
    b = _Builder(two_bridge(a))
    groups = _groups(a)
    current = list(groups[0])
    i = 1
    while i < len(groups):
        if len(current) % 2:
            b.rotate(current)
            current = current + groups[i]
            i += 1
        else:
            nxt = set(groups[i])
            while set(b.curve.word) & nxt:
                if not b.absorb_into(current, nxt & set(b.curve.word)):
                    raise ReductionError("no crossing can be absorbed into the even twist")
            i += 1
            if i < len(groups):
                current = current + groups[i]
                i += 1
    b.finish_twist()
    return b.trace()


def reduce_p_family(m: int, n: int) -> Trace:
    """Reduce P(m, n) with exactly m negative type 2 moves.

    The clasp in the first box is erased by m type 2 moves.  Then, box by box,
    each crossing of box i is absorbed into the 2m-crossing clasp of box i+1
    and removed as a kink.  The last clasp is left as 2m kinks.
    """
    b = _Builder(p_family(m, n))
    boxes = box_labels([2 * m] * (2 * n))
    first = set(boxes[0])
    for _ in range(m):
        bigons = [
            f for f in b.curve.faces
            if f.degree == 2 and f.distinct_vertices == 2 and set(f.vertices) <= first
        ]
        if not bigons:
            raise ReductionError("the first box has no bigon left")
        b.move(Move(MoveKind.R2_MINUS, bigons[0].index))
    for i in range(1, 2 * n - 1):
        source = set(boxes[i])
        while set(b.curve.word) & source:
            if not b.absorb_into(boxes[i + 1], source & set(b.curve.word)):
                raise ReductionError(f"box {i + 1} has no crossing beside box {i + 2}")
    b.drop_kinks()
    if not b.curve.is_trivial:
        raise ReductionError("reduction of P(m, n) did not reach the trivial curve")
    return b.trace()


def rii_upper_bound_from_trace(trace: Trace) -> int:
    """Negative type 2 moves used by a trace ending at the trivial curve."""
    if not trace.claimed_final.is_trivial:
        raise ValueError("the trace does not end at the trivial curve")
    return trace.cost


__all__ = [
    "FamilyError",
    "PatternError",
    "ReductionError",
    "reduce_p_family",
    "reduce_pretzel",
    "reduce_torus",
    "reduce_two_bridge",
    "rii_upper_bound_from_trace",
]
