"""Twist rotation and absorption macros built from type 1 and type 3 moves.

A twist is a run of crossings h1..hk that two strands pass through
consecutively, with bigon eyes between neighbours.  Two local replacements
act on twists:

* odd k, *rotation*: the twist is turned a quarter turn inside its disk, so
  its ends pair up the four legs the other way round;
* even k, *absorption*: a crossing c whose strand joins one leg at each end
  of the twist (so one strand reads ``c h1 .. hk c``) is pushed through the
  twist and comes out as a monogon on that strand.

Both are built recursively.  Rotation of k crossings creates a kink beside
the first k-1 crossings by undoing an absorption of size k-1, slides it past
the twist together with the last crossing, then removes it.  Absorption of
k crossings rotates the first k-1 of them and slides c, together with the
last crossing, across the rotated part.  Each recipe is computed once in a
small model curve, checked against the expected result, and then replayed
on the target curve by matching visit tokens, so every step that reaches a
caller is an ordinary move whose site was looked up on the current curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .curve import PlaneCurve, is_equivalent
from .moves import (
    LEFT,
    RIGHT,
    Move,
    MoveKind,
    Trace,
    _face_kind,
    apply_move,
    new_label,
)
from .tangles import add, crossing, curve_from_pd, horizontal_twist, numerator, vertical_twist


class PatternError(ValueError):
    """The requested site is not an occurrence of the macro's left-hand side."""


@dataclass(frozen=True)
class TangleSite:
    """Where a size-k macro applies.

    ``twist`` lists the twist crossings in order along the twist; ``extra`` is
    the crossing to absorb (even k only).
    """

    k: int
    twist: tuple[int, ...]
    extra: int | None = None


# ---------------------------------------------------------------------------
# twists


def _run(curve: PlaneCurve, start: int, labels: Sequence[int], step: int) -> list[int] | None:
    n2 = len(curve.tokens)
    out = []
    for j, x in enumerate(labels):
        p = (start + step * j) % n2
        if curve.word[p] != x:
            return None
        out.append(p)
    return out


def twist_runs(curve: PlaneCurve, labels: Sequence[int]) -> tuple[list[int], list[int]] | None:
    """Word positions of the two strands through a twist, or None.

    Each returned run lists positions in the order of ``labels``.  Neighbouring
    crossings must bound a bigon.
    """
    labels = list(labels)
    if not labels or len(set(labels)) != len(labels) or not set(labels) <= set(curve.word):
        return None
    first = [i for i, x in enumerate(curve.word) if x == labels[0]]
    runs = []
    for p in first:
        r = _run(curve, p, labels, 1) or _run(curve, p, labels, -1)
        if r is None:
            return None
        runs.append(r)
    r1, r2 = runs
    if set(r1) & set(r2):
        return None
    n2 = len(curve.tokens)
    for j in range(len(labels) - 1):
        f1 = _faces_between(curve, r1[j], r1[j + 1], n2)
        f2 = _faces_between(curve, r2[j], r2[j + 1], n2)
        if not any(curve.faces[f].degree == 2 for f in f1 & f2):
            return None
    return r1, r2


def _faces_between(curve, p, q, n2):
    e = p if (p + 1) % n2 == q else q
    return {curve.right_face(e), curve.left_face(e)}


def _windows(curve: PlaneCurve, k: int) -> Iterator[tuple[int, ...]]:
    n2 = len(curve.tokens)
    seen = set()
    for p in range(n2):
        labels = tuple(curve.word[(p + j) % n2] for j in range(k))
        if len(set(labels)) != k:
            continue
        key = min(labels, labels[::-1])
        if key in seen:
            continue
        seen.add(key)
        if twist_runs(curve, labels) is not None:
            yield key


def _absorbable(curve: PlaneCurve, runs) -> list[int]:
    """Crossings c such that one twist strand reads c h1 .. hk c."""
    n2 = len(curve.tokens)
    out = []
    for r in runs:
        step = 1 if len(r) == 1 or (r[0] + 1) % n2 == r[1] else -1
        before = curve.word[(r[0] - step) % n2]
        after = curve.word[(r[-1] + step) % n2]
        if before == after and before not in {curve.word[p] for p in r}:
            out.append(before)
    return out


# ---------------------------------------------------------------------------
# token-level steps


@dataclass(frozen=True)
class _Step:
    kind: MoveKind
    edges: frozenset = frozenset()  # face moves: unordered token pairs of the face's edges
    edge: tuple[int, int] = (0, 0)  # R1+: tokens before and after the new kink
    side: str = LEFT
    new: tuple[int, int] = (0, 0)  # R1+: tokens of the new kink in traversal order


def _face_pairs(curve: PlaneCurve, face) -> frozenset:
    n2 = len(curve.tokens)
    return frozenset(
        frozenset((curve.tokens[e], curve.tokens[(e + 1) % n2])) for e in curve.face_edges(face)
    )


def _record(curve: PlaneCurve, move: Move) -> tuple[_Step, PlaneCurve]:
    after = apply_move(curve, move)
    if move.kind is MoveKind.R1_PLUS:
        e, side = move.site
        n2 = len(curve.tokens)
        x = max(after.labels)
        step = _Step(move.kind, edge=(curve.tokens[e], curve.tokens[(e + 1) % n2]), side=side, new=(x, -x))
    else:
        step = _Step(move.kind, edges=_face_pairs(curve, curve.faces[move.site]))
    return step, after


def _reverse(curve: PlaneCurve, steps: Sequence[_Step]) -> list[_Step]:
    """Token steps undoing ``steps`` (which start at ``curve``)."""
    out = []
    for step in steps:
        if step.kind is MoveKind.R3:
            out.append(step)
        elif step.kind is MoveKind.R1_PLUS:
            out.append(_Step(MoveKind.R1_MINUS, edges=frozenset({frozenset(step.new)})))
        elif step.kind is MoveKind.R1_MINUS:
            (pair,) = step.edges
            n2 = len(curve.tokens)
            i = next(i for i, t in enumerate(curve.tokens) if t in pair and curve.tokens[(i + 1) % n2] in pair)
            t1, t2 = curve.tokens[i], curve.tokens[(i + 1) % n2]
            p, q = curve.tokens[i - 1], curve.tokens[(i + 2) % n2]
            c = curve.chirality[abs(t1)]
            side = RIGHT if (c > 0) == (t1 > 0) else LEFT
            out.append(_Step(MoveKind.R1_PLUS, edge=(p, q), side=side, new=(t1, t2)))
        else:
            raise ValueError("only type 1 and type 3 steps can be reversed")
        curve = _apply_tokens(curve, step)
    out.reverse()
    return out


def _apply_tokens(curve: PlaneCurve, step: _Step) -> PlaneCurve:
    """Apply a token step on the curve it was recorded on."""
    return _Transplant(curve, {t: t for t in curve.tokens}, {}, False).apply(step)[1]


class _Transplant:
    """Replays token steps on a target curve through a token map."""

    def __init__(self, curve: PlaneCurve, phi: dict[int, int], reversed_: dict[int, bool], flip: bool):
        self.curve = curve
        self.phi = dict(phi)
        self.rev = dict(reversed_)
        self.flip = flip

    def apply(self, step: _Step) -> tuple[Move, PlaneCurve]:
        curve = self.curve
        n2 = len(curve.tokens)
        if step.kind is MoveKind.R1_PLUS:
            p, q = step.edge
            rp, rq = self.phi.get(p), self.phi.get(q)
            pos = {t: i for i, t in enumerate(curve.tokens)}
            if rp is not None and rq is not None:
                i = pos[rp]
                if curve.tokens[(i + 1) % n2] == rq:
                    edge, rev = i, False
                elif curve.tokens[(i - 1) % n2] == rq:
                    edge, rev = (i - 1) % n2, True
                else:
                    raise PatternError("kink edge is not an edge of the target")
            elif rp is not None:
                rev = self.rev.get(p, False)
                edge = (pos[rp] - 1) % n2 if rev else pos[rp]
            elif rq is not None:
                rev = self.rev.get(q, False)
                edge = pos[rq] if rev else (pos[rq] - 1) % n2
            else:
                raise PatternError("kink edge lies outside the site")
            side = step.side
            if rev != self.flip:
                side = LEFT if side == RIGHT else RIGHT
            x = new_label(curve)
            move = Move(MoveKind.R1_PLUS, (edge, side))
            a, b = step.new
            self.phi[a], self.phi[b] = (-x, x) if rev else (x, -x)
            self.rev[a] = self.rev[b] = rev
        else:
            try:
                target = frozenset(frozenset(self.phi[t] for t in pair) for pair in step.edges)
            except KeyError:
                raise PatternError("move face lies outside the site") from None
            move = None
            for face in curve.faces:
                if face.degree == len(step.edges) and _face_pairs(curve, face) == target:
                    if _face_kind(face) is step.kind:
                        move = Move(step.kind, face.index)
                        break
            if move is None:
                raise PatternError(f"no {step.kind} face at the mapped site")
        self.curve = apply_move(curve, move)
        return move, self.curve


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class _Recipe:
    curve: PlaneCurve  # model curve the steps start from
    order: tuple[int, ...]  # model twist labels in order along the twist
    runs: tuple[tuple[int, ...], ...]  # model token runs defining the site
    steps: tuple[_Step, ...]
    final: PlaneCurve


def _rel_chirality(curve: PlaneCurve, a: int, b: int) -> int:
    """+1 if the visit ``b`` crosses the visit ``a`` from right to left."""
    c = curve.chirality[abs(a)]
    return c if a > 0 else -c


def _frames(curve: PlaneCurve, recipe: _Recipe, labels: dict[int, int]) -> Iterator[_Transplant]:
    """All consistent ways of laying the recipe's site onto ``curve``."""
    model = recipe.curve
    n2 = len(curve.tokens)
    options = []
    for run in recipe.runs:
        want = [labels.get(abs(t)) for t in run]
        cands = []
        for p in range(n2):
            for step in (1, -1):
                pos = [(p + step * j) % n2 for j in range(len(run))]
                if [curve.word[i] for i in pos] == want:
                    phi = {t: curve.tokens[i] for t, i in zip(run, pos)}
                    cands.append((phi, step == -1))
        options.append(cands)
    for choice in product(*options):
        phi, rev = {}, {}
        ok = True
        for run, (m, r) in zip(recipe.runs, choice):
            for t in run:
                if t in phi and phi[t] != m[t]:
                    ok = False
                phi[t] = m[t]
                rev[t] = r
        if not ok or len(set(phi.values())) != len(phi):
            continue
        flips = set()
        for x in {abs(t) for t in phi}:
            if x not in phi or -x not in phi or abs(phi[x]) != abs(phi[-x]):
                flips.add(None)
                break
            rel_m = _rel_chirality(model, x, -x)
            rel_r = _rel_chirality(curve, phi[x], phi[-x])
            if rev[x] != rev[-x]:
                rel_r = -rel_r
            flips.add(rel_m != rel_r)
        if len(flips) == 1 and None not in flips:
            yield _Transplant(curve, phi, rev, flips.pop())


def _sweep(curve: PlaneCurve, moving: tuple[int, int], across: set[int], steps: list[_Step]) -> PlaneCurve:
    """Slide the crossings ``moving`` past every crossing in ``across`` by type 3 moves."""
    across = set(across)
    while across:
        found = [
            f for f in curve.faces
            if _face_kind(f) is MoveKind.R3 and set(moving) <= set(f.vertices) and set(f.vertices) & across
        ]
        if len(found) != 1:
            raise PatternError("sweep is ambiguous or blocked")
        (third,) = set(found[0].vertices) - set(moving)
        step, curve = _record(curve, Move(MoveKind.R3, found[0].index))
        steps.append(step)
        across.discard(third)
    return curve


def _drop_kink(curve: PlaneCurve, x: int, steps: list[_Step]) -> PlaneCurve:
    faces = [f for f in curve.faces if f.degree == 1 and f.vertices == (x,)]
    if len(faces) != 1:
        raise PatternError(f"crossing {x} is not a kink")
    step, curve = _record(curve, Move(MoveKind.R1_MINUS, faces[0].index))
    steps.append(step)
    return curve


def twist_order(curve: PlaneCurve, labels) -> tuple[int, ...] | None:
    """The crossings ``labels`` in order along their twist, if they form one."""
    labels = set(labels)
    k, n2 = len(labels), len(curve.tokens)
    for p in range(n2):
        run = tuple(curve.word[(p + j) % n2] for j in range(k))
        if set(run) == labels and len(run) == k and twist_runs(curve, run) is not None:
            return run
    return None


def _model_runs(curve: PlaneCurve, labels: Sequence[int], extra: int | None = None):
    runs = twist_runs(curve, labels)
    assert runs is not None
    out = []
    n2 = len(curve.tokens)
    for r in runs:
        toks = [curve.tokens[p] for p in r]
        if extra is not None:
            step = 1 if len(r) == 1 or (r[0] + 1) % n2 == r[1] else -1
            a, b = (r[0] - step) % n2, (r[-1] + step) % n2
            if curve.word[a] == extra == curve.word[b]:
                toks = [curve.tokens[a]] + toks + [curve.tokens[b]]
        if len(r) > 1 and (r[0] + 1) % n2 != r[1]:
            toks.reverse()  # keep runs in traversal order
        out.append(tuple(toks))
    return tuple(out)


def _embed(curve: PlaneCurve, recipe: _Recipe, labels: dict[int, int], steps: list[_Step], check) -> tuple[PlaneCurve, dict]:
    """Replay ``recipe`` inside a model curve, trying each frame until ``check`` passes."""
    for frame in _frames(curve, recipe, labels):
        local: list[_Step] = []
        try:
            cur = curve
            for s in recipe.steps:
                move, _ = frame.apply(s)
                rec, cur = _record(cur, move)
                local.append(rec)
            result = check(cur, frame.phi, local)
        except PatternError:
            continue
        if result is not None:
            steps.extend(local)
            return result
    raise PatternError("no frame of the sub-recipe fits")


@lru_cache(maxsize=None)
def _rotation(k: int) -> _Recipe:
    if k % 2 == 0 or k < 1:
        raise ValueError("rotation needs an odd twist")
    model = curve_from_pd(numerator(add(horizontal_twist(k), horizontal_twist(2))))
    twist = list(range(1, k + 1))
    runs = _model_runs(model, twist)
    goal = curve_from_pd(numerator(add(vertical_twist(k), horizontal_twist(2))))
    if k == 1:
        return _Recipe(model, tuple(twist), runs, (), model)
    sub = _unabsorption(k - 1)
    steps: list[_Step] = []

    def finish(cur, phi, local):
        kink = abs(phi[sub.steps[0].new[0]])
        tail: list[_Step] = []
        cur = _sweep(cur, (k, kink), set(range(1, k)), tail)
        cur = _drop_kink(cur, kink, tail)
        if not is_equivalent(cur, goal, mirror=False):
            return None
        local.extend(tail)
        return cur

    final = _embed(model, sub, {x: i + 1 for i, x in enumerate(sub.order)}, steps, finish)
    return _Recipe(model, tuple(twist), runs, tuple(steps), final)


def _absorption_model(k: int) -> PlaneCurve:
    return curve_from_pd(numerator(add(add(vertical_twist(k), crossing()), horizontal_twist(3))))


@lru_cache(maxsize=None)
def _absorption(k: int) -> _Recipe:
    if k % 2 or k < 2:
        raise ValueError("absorption needs an even twist")
    model = _absorption_model(k)
    c = k + 1
    twist = list(range(1, k + 1))
    runs = _model_runs(model, twist, extra=c)
    goal = curve_from_pd(numerator(add(vertical_twist(k), horizontal_twist(3))))
    sub = _rotation(k - 1)
    steps: list[_Step] = []

    def finish(cur, phi, local):
        tail: list[_Step] = []
        cur = _sweep(cur, (k, c), set(range(1, k)), tail)
        cur = _drop_kink(cur, c, tail)
        if not is_equivalent(cur, goal, mirror=False):
            return None
        local.extend(tail)
        return cur

    final = _embed(model, sub, {x: i + 1 for i, x in enumerate(sub.order)}, steps, finish)
    return _Recipe(model, tuple(twist), runs, tuple(steps), final)


@lru_cache(maxsize=None)
def _unabsorption(k: int) -> _Recipe:
    fwd = _absorption(k)
    order = twist_order(fwd.final, range(1, k + 1))
    runs = _model_runs(fwd.final, order)
    steps = _reverse(fwd.curve, fwd.steps)
    return _Recipe(fwd.final, order, runs, tuple(steps), fwd.curve)


# ---------------------------------------------------------------------------
# public interface


def _site_labels(recipe: _Recipe, site: TangleSite) -> dict[int, int]:
    labels = {m: x for m, x in zip(recipe.order, site.twist)}
    if site.k % 2 == 0:
        labels[site.k + 1] = site.extra
    return labels


def _check_site(curve: PlaneCurve, site: TangleSite):
    if site.k < 1 or len(site.twist) != site.k:
        raise PatternError(f"a T({site.k}) site needs {site.k} twist crossings")
    runs = twist_runs(curve, site.twist)
    if runs is None:
        raise PatternError(f"crossings {site.twist} do not form a twist")
    if site.k % 2 == 0 and site.extra not in _absorbable(curve, runs):
        raise PatternError(f"crossing {site.extra} is not beside the twist {site.twist}")
    if site.k % 2 and site.extra is not None:
        raise PatternError("odd macros take no extra crossing")


def _recipe_for(k: int) -> tuple[_Recipe, int]:
    """Recipe and the number of its steps forming the macro proper."""
    if k % 2:
        r = _rotation(k)
        return r, len(r.steps)
    r = _absorption(k)
    return r, len(r.steps) - 1  # the absorbed crossing is left as a kink


def expand_macro_T(curve: PlaneCurve, k: int, site: TangleSite) -> Trace:
    """Type 1 and 3 moves realizing the size-k replacement at ``site``.

    Odd k rotates the twist; even k pushes ``site.extra`` through the twist,
    leaving it as a monogon.  The crossing count is unchanged.
    """
    if site.k != k:
        raise PatternError(f"site is for T({site.k}), not T({k})")
    _check_site(curve, site)
    recipe, count = _recipe_for(k)
    for frame in _frames(curve, recipe, _site_labels(recipe, site)):
        try:
            moves = [frame.apply(s)[0] for s in recipe.steps[:count]]
        except PatternError:
            continue
        return Trace(curve, moves, frame.curve)
    raise PatternError(f"no embedding of the T({k}) pattern at {site}")


def find_tangle_occurrences(curve: PlaneCurve, k: int) -> list[TangleSite]:
    """Every site where :func:`expand_macro_T` applies with this k."""
    if curve.is_trivial or k < 1 or k > curve.num_vertices:
        return []
    recipe, _ = _recipe_for(k)
    out = []
    for twist in _windows(curve, k):
        if k % 2:
            cands = [None]
        else:
            cands = sorted(set(_absorbable(curve, twist_runs(curve, twist))))
        for extra in cands:
            for order in (twist, twist[::-1]):
                site = TangleSite(k, order, extra)
                if next(_frames(curve, recipe, _site_labels(recipe, site)), None) is not None:
                    out.append(site)
                    break
    return out


def absorb(curve: PlaneCurve, twist: Sequence[int], extra: int) -> Trace:
    """Absorb ``extra`` into an even twist and delete it: type 1 and 3 moves only."""
    site = TangleSite(len(twist), tuple(twist), extra)
    trace = expand_macro_T(curve, site.k, site)
    faces = [f for f in trace.claimed_final.faces if f.degree == 1 and f.vertices == (extra,)]
    move = Move(MoveKind.R1_MINUS, faces[0].index)
    return Trace(curve, trace.steps + [move], apply_move(trace.claimed_final, move))


def rotate_twist(curve: PlaneCurve, twist: Sequence[int]) -> Trace:
    """Rotate an odd twist by type 1 and 3 moves."""
    return expand_macro_T(curve, len(twist), TangleSite(len(twist), tuple(twist)))
