"""Flat Reidemeister moves of types 1, negative 2 and 3 on plane curves."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .curve import (
    TRIVIAL,
    PlaneCurve,
    canonical_key,
    format_gauss_code,
    from_gauss_code,
    validate,
)


class MoveError(ValueError):
    """A move whose site does not satisfy the move's precondition."""


class MoveKind(str, Enum):
    R1_PLUS = "R1+"
    R1_MINUS = "R1-"
    R2_MINUS = "R2-"
    R3 = "R3"

    def __str__(self):
        return self.value


LEFT, RIGHT = "L", "R"


@dataclass(frozen=True)
class Move:
    """One rewrite.

    ``site`` is a face index (in the order of ``curve.faces``) for R1-, R2-
    and R3, and an ``(edge, side)`` pair for R1+, where edge ``i`` runs from
    visit ``i`` to visit ``i + 1`` of the normalized word.
    """

    kind: MoveKind
    site: int | tuple[int, str]

    def __post_init__(self):
        object.__setattr__(self, "kind", MoveKind(self.kind))
        if self.kind is MoveKind.R1_PLUS:
            edge, side = self.site
            if side not in (LEFT, RIGHT):
                raise MoveError(f"R1+ side must be L or R, got {side!r}")
            object.__setattr__(self, "site", (int(edge), side))

    def __str__(self):
        return f"{self.kind}@{self.site}"


@dataclass(frozen=True)
class MovePolicy:
    allowed: frozenset[MoveKind]

    def __post_init__(self):
        allowed = frozenset(MoveKind(k) for k in self.allowed)
        if not allowed:
            raise ValueError("a move policy must allow at least one kind")
        object.__setattr__(self, "allowed", allowed)

    def __contains__(self, kind) -> bool:
        return MoveKind(kind) in self.allowed

    @classmethod
    def of(cls, *kinds) -> "MovePolicy":
        return cls(frozenset(kinds))


FULL_POLICY = MovePolicy.of(*MoveKind)
HOMOTOPY_13 = MovePolicy.of(MoveKind.R1_PLUS, MoveKind.R1_MINUS, MoveKind.R3)
DECREASING = MovePolicy.of(MoveKind.R1_MINUS, MoveKind.R2_MINUS)

_VERTEX_DELTA = {MoveKind.R1_PLUS: 1, MoveKind.R1_MINUS: -1, MoveKind.R2_MINUS: -2, MoveKind.R3: 0}


def vertex_delta(kind) -> int:
    return _VERTEX_DELTA[MoveKind(kind)]


# ---------------------------------------------------------------------------
# detection


def _face_kind(face) -> MoveKind | None:
    deg = face.degree
    if deg == 1:
        return MoveKind.R1_MINUS
    if deg == 2 and face.distinct_vertices == 2:
        return MoveKind.R2_MINUS
    if deg == 3 and face.distinct_vertices == 3:
        return MoveKind.R3
    return None


def enumerate_moves(curve: PlaneCurve, policy: MovePolicy = FULL_POLICY) -> list[Move]:
    moves = []
    if MoveKind.R1_PLUS in policy.allowed:
        for edge in range(max(curve.num_edges, 1)):
            moves.append(Move(MoveKind.R1_PLUS, (edge, LEFT)))
            moves.append(Move(MoveKind.R1_PLUS, (edge, RIGHT)))
    if curve.is_trivial:
        return moves
    for face in curve.faces:
        kind = _face_kind(face)
        if kind is not None and kind in policy.allowed:
            moves.append(Move(kind, face.index))
    return moves


# ---------------------------------------------------------------------------
# application


def _check_face_site(curve: PlaneCurve, move: Move):
    if curve.is_trivial:
        raise MoveError(f"{move.kind} has no site on the trivial curve")
    if not isinstance(move.site, int) or not 0 <= move.site < len(curve.faces):
        raise MoveError(f"{move.kind} site {move.site!r} is not a face of the curve")
    face = curve.faces[move.site]
    if _face_kind(face) is not move.kind:
        need = {
            MoveKind.R1_MINUS: "a 1-gon",
            MoveKind.R2_MINUS: "a 2-gon with 2 distinct vertices",
            MoveKind.R3: "a 3-gon with 3 distinct vertices",
        }[move.kind]
        raise MoveError(
            f"{move.kind} site face {move.site} has degree {face.degree} with "
            f"{face.distinct_vertices} distinct vertices; need {need}"
        )
    return face


def new_label(curve: PlaneCurve) -> int:
    return max(curve.labels, default=0) + 1


def insert_kink(curve: PlaneCurve, edge: int, side: str, label: int | None = None) -> PlaneCurve:
    """R1+: put a monogon on ``side`` of edge ``edge``."""
    x = new_label(curve) if label is None else label
    chir = dict(curve.chirality)
    # A-branch then B-branch; B crossing A from right to left puts the loop on the right
    chir[x] = 1 if side == RIGHT else -1
    if curve.is_trivial:
        if edge != 0:
            raise MoveError("the trivial curve has a single edge 0")
        return PlaneCurve((x, -x), chir)
    n2 = len(curve.tokens)
    if not 0 <= edge < n2:
        raise MoveError(f"R1+ edge {edge} out of range 0..{n2 - 1}")
    if x in chir and x in curve.chirality:
        raise MoveError(f"label {x} already in use")
    tokens = curve.tokens[: edge + 1] + (x, -x) + curve.tokens[edge + 1 :]
    return PlaneCurve(tokens, chir)


def _delete_positions(curve: PlaneCurve, positions: Iterable[int]) -> PlaneCurve:
    drop = set(positions)
    tokens = [t for i, t in enumerate(curve.tokens) if i not in drop]
    chir = {abs(t): curve.chirality[abs(t)] for t in tokens}
    return PlaneCurve(tokens, chir) if tokens else TRIVIAL


def apply_move(curve: PlaneCurve, move: Move) -> PlaneCurve:
    """Apply ``move`` and return the new curve; raises MoveError if inapplicable."""
    if move.kind is MoveKind.R1_PLUS:
        edge, side = move.site
        return insert_kink(curve, edge, side)
    face = _check_face_site(curve, move)
    n2 = len(curve.tokens)
    edges = curve.face_edges(face)
    if move.kind is MoveKind.R1_MINUS:
        (e,) = edges
        return _delete_positions(curve, (e, (e + 1) % n2))
    if move.kind is MoveKind.R2_MINUS:
        return _delete_positions(curve, [p for e in edges for p in (e, (e + 1) % n2)])
    # R3: each side of the trigon reverses the order of its two crossings
    tokens = list(curve.tokens)
    for e in edges:
        f = (e + 1) % n2
        tokens[e], tokens[f] = tokens[f], tokens[e]
    return PlaneCurve(tokens, curve.chirality)


# ---------------------------------------------------------------------------
# traces


@dataclass
class Trace:
    initial: PlaneCurve
    steps: list[Move] = field(default_factory=list)
    claimed_final: PlaneCurve | None = None

    def __post_init__(self):
        if self.claimed_final is None:
            self.claimed_final = replay(self.initial, self.steps)

    @property
    def cost(self) -> int:
        return sum(1 for m in self.steps if m.kind is MoveKind.R2_MINUS)

    def __len__(self):
        return len(self.steps)

    def kinds(self) -> set[MoveKind]:
        return {m.kind for m in self.steps}

    def curves(self) -> list[PlaneCurve]:
        out = [self.initial]
        for m in self.steps:
            out.append(apply_move(out[-1], m))
        return out

    # -- JSON -----------------------------------------------------------

    def to_json(self) -> dict:
        steps = []
        cur = self.initial
        for m in self.steps:
            steps.append({"kind": m.kind.value, "site": _site_to_json(cur, m)})
            cur = apply_move(cur, m)
        return {
            "initial": format_gauss_code(self.initial),
            "steps": steps,
            "final": format_gauss_code(self.claimed_final),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "Trace":
        """Decode a trace; step sites are resolved against the replayed curves."""
        initial = from_gauss_code(data["initial"])
        final = from_gauss_code(data["final"])
        steps = []
        cur = initial
        for raw in data["steps"]:
            move = _site_from_json(cur, raw)
            steps.append(move)
            try:
                cur = apply_move(cur, move)
            except MoveError:
                # leave the remaining sites unresolved; verification reports the failure
                steps.extend(_site_from_json(None, r) for r in data["steps"][len(steps):])
                break
        return cls(initial, steps, final)


def _site_to_json(curve: PlaneCurve, move: Move):
    if move.kind is MoveKind.R1_PLUS:
        edge, side = move.site
        return [curve.out_dart(edge) if not curve.is_trivial else 0, side]
    return move.site


def _site_from_json(curve: PlaneCurve | None, raw: dict) -> Move:
    kind = MoveKind(raw["kind"])
    site = raw["site"]
    if kind is MoveKind.R1_PLUS:
        dart, side = site
        edge = dart
        if curve is not None and not curve.is_trivial:
            pos = curve.dart_position.get(dart)
            if pos is None or not pos[1]:
                raise MoveError(f"dart {dart} is not an outgoing dart")
            edge = pos[0]
        return Move(kind, (edge, side))
    return Move(kind, int(site))


def replay(initial: PlaneCurve, steps: Sequence[Move]) -> PlaneCurve:
    cur = initial
    for m in steps:
        cur = apply_move(cur, m)
    return cur


@dataclass
class VerificationReport:
    valid: bool
    steps_checked: int
    cost: int
    final_matches: bool
    first_bad_step: int | None = None
    message: str = ""

    def summary(self) -> str:
        lines = [
            f"valid: {str(self.valid).lower()}",
            f"steps: {self.steps_checked}",
            f"negative-2 moves: {self.cost}",
            f"final matches: {str(self.final_matches).lower()}",
        ]
        if self.first_bad_step is not None:
            lines.append(f"first bad step: {self.first_bad_step}")
        if self.message:
            lines.append(f"message: {self.message}")
        return "\n".join(lines)


def verify_trace(trace: Trace, mirror: bool = True) -> VerificationReport:
    """Replay ``trace`` checking every step and the claimed endpoint."""
    cur = trace.initial
    cost = 0
    report = validate(cur)
    if not report.ok:
        return VerificationReport(False, 0, 0, False, 0, "initial curve invalid: " + "; ".join(report.violations))
    for i, m in enumerate(trace.steps):
        try:
            nxt = apply_move(cur, m)
        except MoveError as exc:
            return VerificationReport(False, i, cost, False, i, str(exc))
        report = validate(nxt)
        if not report.ok:
            return VerificationReport(False, i, cost, False, i, "; ".join(report.violations))
        if nxt.num_vertices - cur.num_vertices != vertex_delta(m.kind):
            return VerificationReport(False, i, cost, False, i, "vertex count delta mismatch")
        if m.kind is MoveKind.R2_MINUS:
            cost += 1
        cur = nxt
    n = len(trace.steps)
    same = canonical_key(cur, mirror) == canonical_key(trace.claimed_final, mirror)
    if not same:
        return VerificationReport(False, n, cost, False, n, "replayed curve differs from claimed final")
    return VerificationReport(True, n, cost, True)


def concat_traces(a: Trace, b: Trace) -> Trace:
    """Trace of ``a`` followed by ``b``.

    The join is by equivalence; when ``b`` starts from a relabeled copy of
    ``a``'s endpoint, ``b``'s steps are replayed on ``a``'s actual endpoint
    via the isomorphism.
    """
    end = replay(a.initial, a.steps)
    if canonical_key(end) != canonical_key(b.initial):
        raise MoveError("trace endpoints do not match")
    steps = list(a.steps)
    if end == b.initial:
        steps += b.steps
        return Trace(a.initial, steps, b.claimed_final)
    steps += transport_steps(b.initial, b.steps, end)
    return Trace(a.initial, steps, b.claimed_final)


def transport_steps(source: PlaneCurve, steps: Sequence[Move], target: PlaneCurve) -> list[Move]:
    """Re-express ``steps`` (valid from ``source``) as steps valid from an equivalent ``target``."""
    out = []
    src, tgt = source, target
    for m in steps:
        iso = find_isomorphism(src, tgt)
        mapped = _map_move(src, tgt, m, iso)
        out.append(mapped)
        src = apply_move(src, m)
        tgt = apply_move(tgt, mapped)
    return out


def find_isomorphism(a: PlaneCurve, b: PlaneCurve):
    """A visit correspondence ``(offset, direction, mirrored)`` taking ``a`` onto ``b``."""
    from .curve import _visit_codes

    n2 = len(a.tokens)
    if n2 != len(b.tokens):
        raise MoveError("curves are not equivalent")
    if n2 == 0:
        return (0, 1, False)
    ca = _visit_codes(a.tokens, a.chirality)
    cb = _visit_codes(b.tokens, b.chirality)
    for mirrored in (False, True):
        base = [c ^ 1 for c in ca] if mirrored else ca
        rev = [((2 * n2 - (c & ~1)) | (c & 1)) for c in reversed(base)]
        for direction, seq in ((1, base), (-1, rev)):
            for off in range(n2):
                if seq[off:] + seq[:off] == cb:
                    return (off, direction, mirrored)
    raise MoveError("curves are not equivalent")


def _map_position(n2: int, iso, i: int) -> int:
    """Visit position in ``b`` of visit ``i`` of ``a``."""
    off, direction, _ = iso
    if direction == 1:
        return (i - off) % n2
    # reversed sequence index j corresponds to a-visit n2-1-j
    j = n2 - 1 - i
    return (j - off) % n2


def _map_move(a: PlaneCurve, b: PlaneCurve, m: Move, iso) -> Move:
    n2 = len(a.tokens)
    off, direction, mirrored = iso
    if m.kind is MoveKind.R1_PLUS:
        edge, side = m.site
        if n2 == 0:
            flip = mirrored
            return Move(m.kind, (0, _flip(side) if flip else side))
        if direction == 1:
            new_edge = _map_position(n2, iso, edge)
            flip = mirrored
        else:
            # forward edge i..i+1 becomes the edge starting at image of i+1
            new_edge = _map_position(n2, iso, (edge + 1) % n2)
            flip = not mirrored
        return Move(m.kind, (new_edge, _flip(side) if flip else side))
    face = a.faces[m.site]
    edge = a.face_edges(face)[0]
    # pick the image face through one boundary edge and the side the face lies on
    on_right = a.right_face(edge) == m.site
    if direction == 1:
        img = _map_position(n2, iso, edge)
        right = on_right != mirrored
    else:
        img = _map_position(n2, iso, (edge + 1) % n2)
        right = on_right == mirrored
    return Move(m.kind, b.right_face(img) if right else b.left_face(img))


def _flip(side: str) -> str:
    return LEFT if side == RIGHT else RIGHT
