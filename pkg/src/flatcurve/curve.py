"""Knot projections on the sphere as signed Gauss words and 4-regular maps.

A curve is stored as the cyclic sequence of its visits to double points.
Each visit is a signed token: ``+x`` is the *A-branch* of crossing ``x`` and
``-x`` its *B-branch*.  The chirality of ``x`` is ``+1`` when the B-branch
crosses the A-branch from right to left.  Branch names are bookkeeping
handles that survive local rewrites; they do not take part in equality.

The combinatorial map is derived from the normalized word.  Vertex ``v``
owns darts ``4*v .. 4*v+3`` in counterclockwise order; darts ``i`` and
``i+2`` are joined by the strand passing straight through.  Faces are the
orbits of ``d -> rot(alpha(d))`` where ``rot`` steps one position
counterclockwise, so the face traced from an outgoing dart lies on the
right of its edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence


class CurveError(ValueError):
    """Raised for structurally invalid curve data."""


class RealizabilityError(CurveError):
    """The double-occurrence word has no spherical realization."""


# ---------------------------------------------------------------------------
# raw maps


@dataclass(frozen=True)
class CombinatorialMap:
    """A bare 4-valent rotation system: vertex labels and an edge involution.

    Used to describe arbitrary (possibly broken) maps for validation.
    """

    labels: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    def through(self, d: int) -> int:
        return d ^ 2

    def face_orbits(self) -> list[list[int]]:
        alpha = self.alpha
        seen = [False] * len(alpha)
        orbits = []
        for start in range(len(alpha)):
            if seen[start]:
                continue
            orbit = []
            d = start
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                e = alpha[d]
                d = (e & ~3) | ((e + 1) & 3)
            orbits.append(orbit)
        return orbits

    def straight_orbits(self) -> list[list[int]]:
        """Orbits of ``d -> through(alpha(d))``: curve components, once per direction."""
        alpha = self.alpha
        seen = [False] * len(alpha)
        orbits = []
        for start in range(len(alpha)):
            if seen[start]:
                continue
            orbit = []
            d = start
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = alpha[d] ^ 2
            orbits.append(orbit)
        return orbits


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    vertices: int = 0
    edges: int = 0
    faces: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_map(cmap: CombinatorialMap) -> ValidationReport:
    v = cmap.num_vertices
    alpha = cmap.alpha
    report = ValidationReport(vertices=v)
    if v == 0:
        if alpha:
            report.violations.append("darts present on a curve without vertices")
        report.faces = 2
        return report
    if len(set(cmap.labels)) != v:
        report.violations.append("duplicate vertex labels")
    if len(alpha) != 4 * v:
        report.violations.append(f"not 4-regular: {len(alpha)} darts for {v} vertices")
        return report
    for d, e in enumerate(alpha):
        if not 0 <= e < len(alpha):
            report.violations.append(f"dart {d} paired with nonexistent dart {e}")
            return report
        if e == d:
            report.violations.append(f"edge involution fixes dart {d}")
        elif alpha[e] != d:
            report.violations.append(f"edge involution is not an involution at dart {d}")
    if report.violations:
        return report
    report.edges = len(alpha) // 2

    # connectivity of the underlying 4-valent graph
    reached = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for p in range(4):
            w = alpha[4 * u + p] >> 2
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != v:
        report.violations.append("underlying graph is disconnected")

    if len(cmap.straight_orbits()) != 2:
        report.violations.append("not a single immersed circle")

    report.faces = len(cmap.face_orbits())
    chi = v - report.edges + report.faces
    if chi != 2:
        report.violations.append(f"not spherical: Euler characteristic {chi}")
    return report


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class Face:
    """A complementary region: its boundary darts in tracing order."""

    index: int
    darts: tuple[int, ...]
    vertices: tuple[int, ...]  # labels of boundary corners, with multiplicity

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def distinct_vertices(self) -> int:
        return len(set(self.vertices))


def _normalize(tokens: Sequence[int], chir: Mapping[int, int]) -> tuple[int, ...]:
    """Rotate the cyclic token word to its deterministic start."""
    n2 = len(tokens)
    if n2 == 0:
        return ()
    labels = [abs(t) for t in tokens]
    low = min(labels)
    best = None
    best_form = None
    for i in range(n2):
        if labels[i] != low:
            continue
        rot = tuple(tokens[i:]) + tuple(tokens[:i])
        form = (tuple(abs(t) for t in rot), _first_second(rot, chir))
        if best_form is None or form < best_form:
            best, best_form = rot, form
    return best


def _first_second(tokens: Sequence[int], chir: Mapping[int, int]) -> tuple[int, ...]:
    """Signs in the first/second-visit convention, in order of first appearance."""
    seen = set()
    out = []
    for t in tokens:
        x = abs(t)
        if x not in seen:
            seen.add(x)
            out.append(chir[x] if t > 0 else -chir[x])
    return tuple(out)


class PlaneCurve:
    """An immutable knot projection on the sphere.

    Build curves with :func:`from_gauss_code`, :meth:`from_tokens`, or the
    generators; the trivial curve is :data:`TRIVIAL`.
    """

    __slots__ = ("tokens", "chirality", "__dict__")

    def __init__(self, tokens: Sequence[int], chirality: Mapping[int, int]):
        tokens = tuple(tokens)
        chir = {abs(t): chirality[abs(t)] for t in tokens}
        object.__setattr__(self, "chirality", chir)
        object.__setattr__(self, "tokens", _normalize(tokens, chir))

    def __setattr__(self, name, value):
        raise AttributeError("PlaneCurve is immutable")

    @classmethod
    def from_tokens(cls, tokens: Sequence[int], chirality: Mapping[int, int]) -> "PlaneCurve":
        curve = cls(tokens, chirality)
        problems = curve.token_problems()
        if problems:
            raise CurveError("; ".join(problems))
        return curve

    def token_problems(self) -> list[str]:
        problems = []
        counts: dict[int, list[int]] = {}
        for t in self.tokens:
            counts.setdefault(abs(t), []).append(t)
        for x, ts in counts.items():
            if x <= 0:
                problems.append(f"label {x} is not positive")
            if sorted(ts) != [-x, x]:
                problems.append(f"crossing {x} is not visited once by each branch")
            if self.chirality.get(x) not in (1, -1):
                problems.append(f"crossing {x} has no chirality")
        return problems

    # -- identity -------------------------------------------------------

    @cached_property
    def word(self) -> tuple[int, ...]:
        return tuple(abs(t) for t in self.tokens)

    @cached_property
    def signs(self) -> dict[int, int]:
        """Chirality in the first/second-visit convention of :attr:`word`."""
        seen = set()
        out = {}
        for t in self.tokens:
            x = abs(t)
            if x not in seen:
                seen.add(x)
                out[x] = self.chirality[x] if t > 0 else -self.chirality[x]
        return out

    @cached_property
    def _ident(self):
        return (self.word, tuple(sorted(self.signs.items())))

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self._ident == other._ident

    def __hash__(self):
        return hash(self._ident)

    def __repr__(self):
        if not self.tokens:
            return "PlaneCurve(trivial)"
        return f"PlaneCurve({format_gauss_code(self)!r})"

    def __reduce__(self):
        return (PlaneCurve, (self.tokens, self.chirality))

    # -- structure ------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.tokens) // 2

    @property
    def num_edges(self) -> int:
        return len(self.tokens) if self.tokens else 0

    @property
    def is_trivial(self) -> bool:
        return not self.tokens

    @cached_property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.word)))

    @cached_property
    def _darts(self):
        """(alpha, out_dart, in_dart) with out/in darts indexed by visit position."""
        index = {x: i for i, x in enumerate(self.labels)}
        n2 = len(self.tokens)
        out_d = [0] * n2
        in_d = [0] * n2
        signs = self.signs
        seen = set()
        for i, x in enumerate(self.word):
            base = 4 * index[x]
            if x not in seen:
                seen.add(x)
                in_d[i], out_d[i] = base, base + 2
            elif signs[x] > 0:
                in_d[i], out_d[i] = base + 1, base + 3
            else:
                in_d[i], out_d[i] = base + 3, base + 1
        alpha = [0] * (4 * len(index))
        for i in range(n2):
            j = (i + 1) % n2
            alpha[out_d[i]] = in_d[j]
            alpha[in_d[j]] = out_d[i]
        return tuple(alpha), tuple(out_d), tuple(in_d)

    @property
    def alpha(self) -> tuple[int, ...]:
        """Edge involution on darts."""
        return self._darts[0]

    @property
    def edge_involution(self) -> tuple[int, ...]:
        return self._darts[0]

    def out_dart(self, position: int) -> int:
        return self._darts[1][position]

    def in_dart(self, position: int) -> int:
        return self._darts[2][position]

    @cached_property
    def dart_position(self) -> dict[int, tuple[int, bool]]:
        """dart -> (visit position, is outgoing)."""
        _, out_d, in_d = self._darts
        table = {}
        for i, d in enumerate(out_d):
            table[d] = (i, True)
        for i, d in enumerate(in_d):
            table[d] = (i, False)
        return table

    def dart_vertex(self, d: int) -> int:
        return self.labels[d >> 2]

    def to_map(self) -> CombinatorialMap:
        return CombinatorialMap(self.labels, self.alpha)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        if not self.tokens:
            return (Face(0, (), ()), Face(1, (), ()))
        labels = self.labels
        orbits = self.to_map().face_orbits()
        return tuple(
            Face(i, tuple(orbit), tuple(labels[d >> 2] for d in orbit))
            for i, orbit in enumerate(orbits)
        )

    @cached_property
    def face_of_dart(self) -> dict[int, int]:
        return {d: f.index for f in self.faces for d in f.darts}

    def face_edges(self, face: Face) -> list[int]:
        """Word positions of the edges bounding ``face`` (edge i joins visit i to i+1)."""
        n2 = len(self.tokens)
        edges = []
        for d in face.darts:
            pos, outgoing = self.dart_position[d]
            edges.append(pos if outgoing else (pos - 1) % n2)
        return edges

    def right_face(self, position: int) -> int:
        """Index of the face on the right of edge ``position``."""
        if not self.tokens:
            return 0
        return self.face_of_dart[self.out_dart(position)]

    def left_face(self, position: int) -> int:
        if not self.tokens:
            return 1
        return self.face_of_dart[self.in_dart((position + 1) % len(self.tokens))]

    def position_of(self, token: int) -> int:
        return self.tokens.index(token)

    def mirror(self) -> "PlaneCurve":
        return PlaneCurve(self.tokens, {x: -s for x, s in self.chirality.items()})

    def relabel(self, mapping: Mapping[int, int]) -> "PlaneCurve":
        tokens = [mapping[abs(t)] * (1 if t > 0 else -1) for t in self.tokens]
        return PlaneCurve(tokens, {mapping[x]: s for x, s in self.chirality.items()})

    def face_degrees(self) -> list[int]:
        return sorted(f.degree for f in self.faces)


TRIVIAL = PlaneCurve((), {})


def trivial() -> PlaneCurve:
    return TRIVIAL


def validate(curve) -> ValidationReport:
    """List every violated invariant; accepts a PlaneCurve or a CombinatorialMap."""
    if isinstance(curve, CombinatorialMap):
        return validate_map(curve)
    problems = curve.token_problems()
    if problems:
        return ValidationReport(violations=problems, vertices=curve.num_vertices)
    return validate_map(curve.to_map())


def faces(curve: PlaneCurve) -> list[Face]:
    report = validate(curve)
    if not report.ok:
        raise CurveError("; ".join(report.violations))
    return list(curve.faces)


def euler_characteristic(curve: PlaneCurve) -> int:
    if curve.is_trivial:
        return 2
    return curve.num_vertices - curve.num_edges + len(curve.faces)


# ---------------------------------------------------------------------------
# canonical keys


def _visit_codes(tokens: Sequence[int], chir: Mapping[int, int]) -> list[int]:
    """Per visit: 2 * (forward distance to partner visit) + (other branch crosses right-to-left)."""
    n2 = len(tokens)
    first: dict[int, int] = {}
    gap = [0] * n2
    for i, t in enumerate(tokens):
        x = abs(t)
        if x in first:
            j = first[x]
            gap[j] = i - j
            gap[i] = n2 - (i - j)
        else:
            first[x] = i
    return [
        2 * gap[i] + ((chir[abs(t)] if t > 0 else -chir[abs(t)]) > 0)
        for i, t in enumerate(tokens)
    ]


def _min_rotation(seq: list[int]) -> tuple[int, ...]:
    low = min(seq)
    return min(tuple(seq[i:] + seq[:i]) for i, v in enumerate(seq) if v == low)


def canonical_form(tokens: Sequence[int], chir: Mapping[int, int], mirror: bool = True) -> tuple[int, ...]:
    if not tokens:
        return ()
    n2 = len(tokens)
    fwd = _visit_codes(tokens, chir)
    # reversing the traversal keeps local chirality and complements the gaps
    rev = [((2 * n2 - (c & ~1)) | (c & 1)) for c in reversed(fwd)]
    candidates = [_min_rotation(fwd), _min_rotation(rev)]
    if mirror:
        candidates.append(_min_rotation([c ^ 1 for c in fwd]))
        candidates.append(_min_rotation([c ^ 1 for c in rev]))
    return min(candidates)


def canonical_key(curve: PlaneCurve, mirror: bool = True) -> bytes:
    """Byte string identifying the curve up to sphere homeomorphism.

    With ``mirror=True`` (default) orientation-reversing homeomorphisms are
    quotiented as well.
    """
    form = canonical_form(curve.tokens, curve.chirality, mirror)
    out = bytearray(len(form).to_bytes(2, "big"))
    for c in form:
        out += c.to_bytes(2, "big")
    return bytes(out)


def curve_from_canonical_form(form: Sequence[int]) -> PlaneCurve:
    n2 = len(form)
    tokens = [0] * n2
    chir = {}
    label = 0
    for i, c in enumerate(form):
        if tokens[i]:
            continue
        label += 1
        j = (i + (c >> 1)) % n2
        tokens[i], tokens[j] = label, -label
        chir[label] = 1 if c & 1 else -1
    return PlaneCurve(tokens, chir)


def is_equivalent(a: PlaneCurve, b: PlaneCurve, mirror: bool = True) -> bool:
    return canonical_key(a, mirror) == canonical_key(b, mirror)


# ---------------------------------------------------------------------------
# Gauss codes


@dataclass(frozen=True)
class GaussCode:
    """A double-occurrence word, optionally with first/second-visit signs."""

    word: tuple[int, ...]
    signs: dict[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))

    def check(self) -> None:
        counts: dict[int, int] = {}
        for x in self.word:
            if not isinstance(x, int) or x <= 0:
                raise CurveError(f"label {x!r} is not a positive integer")
            counts[x] = counts.get(x, 0) + 1
        bad = sorted(x for x, c in counts.items() if c != 2)
        if bad:
            raise CurveError(f"labels not occurring exactly twice: {bad}")
        if self.signs is not None and set(self.signs) != set(counts):
            raise CurveError("signs must be given for exactly the crossing labels")


def _tokens_for(word: Sequence[int]) -> list[int]:
    seen = set()
    tokens = []
    for x in word:
        tokens.append(-x if x in seen else x)
        seen.add(x)
    return tokens


def _is_spherical(tokens: Sequence[int], chir: Mapping[int, int]) -> bool:
    return validate(PlaneCurve(tokens, chir)).ok


def interlaced_pairs(word: Sequence[int]) -> dict[int, set[int]]:
    """Interlacement graph of a double-occurrence word."""
    pos: dict[int, list[int]] = {}
    for i, x in enumerate(word):
        pos.setdefault(x, []).append(i)
    inter = {x: set() for x in pos}
    items = list(pos.items())
    for a, (a0, a1) in items:
        for b, (b0, b1) in items:
            if a < b and (a0 < b0 < a1) != (a0 < b1 < a1):
                inter[a].add(b)
                inter[b].add(a)
    return inter


def gauss_even(word: Sequence[int]) -> bool:
    """Gauss's necessary condition: every chord interlaces an even number of chords."""
    return all(len(v) % 2 == 0 for v in interlaced_pairs(word).values())


def realizations(word: Sequence[int]) -> Iterable[dict[int, int]]:
    """All first/second sign assignments realizing ``word`` on the sphere."""
    labels = sorted(set(word))
    tokens = _tokens_for(word)
    for bits in product((1, -1), repeat=len(labels)):
        signs = dict(zip(labels, bits))
        if _is_spherical(tokens, signs):
            yield signs


def from_gauss_code(code: GaussCode | Sequence[int] | str, signs: Mapping[int, int] | None = None) -> PlaneCurve:
    """Build the curve of a Gauss code.

    Unsigned words are embedded by searching sign assignments; the first
    crossing is fixed to ``+`` since mirrors realize the other half.
    """
    if isinstance(code, str):
        code = parse_gauss_code(code)
    elif not isinstance(code, GaussCode):
        code = GaussCode(tuple(code), dict(signs) if signs is not None else None)
    code.check()
    word = code.word
    if not word:
        return TRIVIAL
    tokens = _tokens_for(word)
    if code.signs is not None:
        curve = PlaneCurve(tokens, code.signs)
        report = validate(curve)
        if not report.ok:
            raise RealizabilityError("not realizable on sphere with the given signs: " + "; ".join(report.violations))
        return curve
    if not gauss_even(word):
        raise RealizabilityError("not realizable on sphere")
    labels = list(dict.fromkeys(word))
    first, rest = labels[0], labels[1:]
    for bits in product((1, -1), repeat=len(rest)):
        chir = dict(zip(rest, bits))
        chir[first] = 1
        if _is_spherical(tokens, chir):
            return PlaneCurve(tokens, chir)
    raise RealizabilityError("not realizable on sphere")


def to_gauss_code(curve: PlaneCurve) -> GaussCode:
    return GaussCode(curve.word, dict(curve.signs))


def format_gauss_code(curve: PlaneCurve | GaussCode) -> str:
    code = to_gauss_code(curve) if isinstance(curve, PlaneCurve) else curve
    line1 = " ".join(str(x) for x in code.word)
    if code.signs is None:
        return line1
    line2 = " ".join(f"{x}:{'+' if s > 0 else '-'}" for x, s in sorted(code.signs.items()))
    return f"{line1}\n{line2}" if line2 else line1


def parse_gauss_code(text: str) -> GaussCode:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if raw.strip().startswith("#"):
            continue
        lines.append(line)
    while lines and not lines[-1]:
        lines.pop()
    if not lines:
        return GaussCode((), {})
    try:
        word = tuple(int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise CurveError(f"bad label in word: {exc}") from None
    if len(lines) > 2 and any(lines[2:]):
        raise CurveError("Gauss code text has more than two lines")
    if len(lines) < 2:
        return GaussCode(word, None if word else {})
    signs = {}
    for tok in lines[1].split():
        label, _, sign = tok.partition(":")
        if sign not in ("+", "-") or not label.isdigit():
            raise CurveError(f"bad sign token {tok!r}")
        signs[int(label)] = 1 if sign == "+" else -1
    return GaussCode(word, signs)


def read_curve(path) -> PlaneCurve:
    with open(path) as fh:
        return from_gauss_code(parse_gauss_code(fh.read()))


def write_curve(curve: PlaneCurve, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_gauss_code(curve) + "\n")
