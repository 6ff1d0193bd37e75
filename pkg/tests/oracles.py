"""Independent reference implementations used to check the package.

None of these share code with the fast paths they check: curve identity is
decided by rooted isomorphism of rotation systems, and the move-count oracle
is a plain Dijkstra over the reference move engine.
"""

from __future__ import annotations

import heapq
import random

from flatcurve.curve import PlaneCurve, from_gauss_code, gauss_even, realizations
from flatcurve.moves import FULL_POLICY, MoveKind, apply_move, enumerate_moves


def rotation_system(curve: PlaneCurve):
    """(sigma, alpha) on darts 4v..4v+3: sigma turns counterclockwise at a vertex."""
    alpha = list(curve.alpha)
    sigma = [(d & ~3) | ((d + 1) & 3) for d in range(len(alpha))]
    return sigma, alpha


def _rooted_code(sigma, alpha, root):
    """Relabel darts in discovery order from ``root``; the code determines the map."""
    order = {root: 0}
    queue = [root]
    code = []
    i = 0
    while i < len(queue):
        d = queue[i]
        i += 1
        for e in (sigma[d], alpha[d]):
            if e not in order:
                order[e] = len(order)
                queue.append(e)
            code.append(order[e])
    return tuple(code)


def map_key(curve: PlaneCurve, mirror: bool = True):
    """Canonical code of the sphere map, up to relabeling (and reflection)."""
    if curve.is_trivial:
        return ()
    sigma, alpha = rotation_system(curve)
    best = min(_rooted_code(sigma, alpha, r) for r in range(len(alpha)))
    if mirror:
        inv = [0] * len(sigma)
        for d, e in enumerate(sigma):
            inv[e] = d
        best = min(best, min(_rooted_code(inv, alpha, r) for r in range(len(alpha))))
    return best


def invariant_violations(curve: PlaneCurve) -> list[str]:
    """Structural checks recomputed from the raw word and dart involution."""
    if curve.is_trivial:
        return []
    out = []
    word = curve.word
    for x in set(word):
        if word.count(x) != 2:
            out.append(f"label {x} occurs {word.count(x)} times")
    sigma, alpha = rotation_system(curve)
    n = len(alpha)
    if n != 4 * curve.num_vertices:
        out.append("vertex is not 4-valent")
    if any(alpha[alpha[d]] != d or alpha[d] == d for d in range(n)):
        out.append("edge pairing is not a fixed-point-free involution")
    # straight-ahead walk: opposite dart at a vertex is d ^ 2
    seen, d = set(), 0
    while d not in seen:
        seen.add(d)
        d = alpha[d] ^ 2
    if len(seen) != n // 2:
        out.append("curve is not a single closed circuit")
    faces, visited = 0, set()
    for s in range(n):
        if s in visited:
            continue
        faces += 1
        d = s
        while d not in visited:
            visited.add(d)
            d = sigma[alpha[d]]
    v, e = n // 4, n // 2
    if v - e + faces != 2:
        out.append(f"Euler characteristic {v - e + faces}")
    return out


def oracle_rii(curve: PlaneCurve, budget: int, policy=FULL_POLICY, state_cap: int = 200_000):
    """Fewest negative type 2 moves to the trivial curve, or None if unreachable.

    Dijkstra over map keys with every intermediate curve at most ``budget``
    crossings; raises RuntimeError when the state cap is reached.  Ties in
    cost pop smaller curves first, which does not affect exactness.
    """
    start = map_key(curve)
    best = {start: 0}
    heap = [(0, curve.num_vertices, 0, start, curve)]
    tick = 0
    while heap:
        cost, _, _, key, cur = heapq.heappop(heap)
        if cost > best[key]:
            continue
        if cur.is_trivial:
            return cost
        for m in enumerate_moves(cur, policy):
            nxt = apply_move(cur, m)
            if nxt.num_vertices > budget:
                continue
            k = map_key(nxt)
            c = cost + (1 if m.kind is MoveKind.R2_MINUS else 0)
            if c < best.get(k, c + 1):
                best[k] = c
                tick += 1
                heapq.heappush(heap, (c, nxt.num_vertices, tick, k, nxt))
        if len(best) > state_cap:
            raise RuntimeError("oracle state cap reached")
    return None


def all_curves(max_crossings: int):
    """Every class up to ``max_crossings`` by brute force over all double-occurrence words."""
    from itertools import permutations

    found = {(): PlaneCurve((), {})}
    for n in range(1, max_crossings + 1):
        seen_words = set()
        for perm in permutations(range(2 * n)):
            # positions perm[2i], perm[2i+1] carry label i+1
            word = [0] * (2 * n)
            for i in range(n):
                word[perm[2 * i]] = i + 1
                word[perm[2 * i + 1]] = i + 1
            # relabel by first occurrence to cut duplicates
            ren = {}
            for x in word:
                ren.setdefault(x, len(ren) + 1)
            w = tuple(ren[x] for x in word)
            if w in seen_words:
                continue
            seen_words.add(w)
            if not gauss_even(w):
                continue
            for signs in realizations(w):
                c = from_gauss_code(w, signs)
                found.setdefault(map_key(c), c)
    return found


def random_curve(rng: random.Random, max_crossings: int, steps: int = 40) -> PlaneCurve:
    """A random curve from a random walk of moves, kept under ``max_crossings``."""
    cur = PlaneCurve((), {})
    for _ in range(steps):
        moves = [m for m in enumerate_moves(cur)
                 if m.kind is not MoveKind.R1_PLUS or cur.num_vertices < max_crossings]
        cur = apply_move(cur, rng.choice(moves))
    return cur
