"""Polynomial-time constructions behind the rainbow Hamilton path machinery.

Everything here is deterministic given (inputs, seed).  The module covers
local median orders and degree splitting, H-partitions, the one-spare-color
rainbow Hamilton path, forced-color and forced-set embeddings, rainbow
connectivity via color layering, and the randomized color absorber.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import (
    ColoredDigraph,
    RainbowPath,
    Tournament,
    TournamentCollection,
    induced_collection,
    majority_subtournament,
)
from .errors import (
    AbsorberConstructionError,
    AbsorptionFailedError,
    ExceptionalConfigurationError,
    InsufficientColorsError,
    NoProgressError,
    StageFailure,
)
from .matching import matching_with_forced_colors, perfect_matching

__all__ = [
    "LocalMedianOrder",
    "HPartition",
    "Absorber",
    "local_median_order",
    "low_degree_count_bound_check",
    "split_block",
    "h_partition",
    "tournament_ham_path",
    "rainbow_ham_path_one_spare",
    "rainbow_ham_path_forcing_color",
    "rainbow_ham_path_forcing_set",
    "rainbow_connect",
    "rainbow_connect_all",
    "build_absorber",
    "absorb",
    "restrict_colors",
]


def restrict_colors(
    tc: TournamentCollection, colors: Sequence[int]
) -> TournamentCollection:
    """Sub-collection keeping only the given colors, in the given order.

    Color k of the result is original color colors[k]."""
    return TournamentCollection(tuple(tc.tournaments[c] for c in colors))


# ---------------------------------------------------------------------------
# local median orders and degree counting


@dataclass(frozen=True)
class LocalMedianOrder:
    """A vertex order stable under single-vertex relocation.

    Stability implies each v_j has in-degree >= (j-1)/2 among its
    predecessors and out-degree >= (n-j)/2 among its successors.
    """

    order: tuple[int, ...]

    def check(self, t: Tournament) -> bool:
        n = len(self.order)
        for j in range(n):
            v = self.order[j]
            pre = self.order[:j]
            post = self.order[j + 1:]
            indeg = sum(1 for u in pre if t.has_arc(u, v))
            outdeg = sum(1 for u in post if t.has_arc(v, u))
            if 2 * indeg < j or 2 * outdeg < n - 1 - j:
                return False
        return True


def local_median_order(t: Tournament) -> LocalMedianOrder:
    """Local search maximizing forward arcs under single-vertex relocation.

    Each accepted move strictly increases the forward-arc count, so at most
    n(n-1)/2 moves happen before a local optimum.
    """
    order = list(range(t.n))
    n = t.n
    improved = True
    while improved:
        improved = False
        for i in range(n):
            v = order[i]
            # delta of moving v just before position j (scanning left) or
            # just after position j (scanning right), accumulated arc by arc
            delta = 0
            best_delta = 0
            best_j = i
            for j in range(i - 1, -1, -1):
                u = order[j]
                delta += 1 if t.has_arc(v, u) else -1
                if delta > best_delta:
                    best_delta = delta
                    best_j = j
            delta = 0
            for j in range(i + 1, n):
                u = order[j]
                delta += 1 if t.has_arc(u, v) else -1
                if delta > best_delta:
                    best_delta = delta
                    best_j = j
            if best_delta > 0:
                order.pop(i)
                order.insert(best_j, v)
                improved = True
    return LocalMedianOrder(tuple(order))


def low_degree_count_bound_check(t: Tournament, d: int) -> bool:
    """True iff at most 2d+1 vertices have in-degree <= d and likewise for
    out-degree.  Always true for tournaments; exposed as a test predicate."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    lo_in = sum(1 for v in range(t.n) if bin(t.in_mask(v)).count("1") <= d)
    lo_out = sum(1 for v in range(t.n) if bin(t.out[v]).count("1") <= d)
    return lo_in <= 2 * d + 1 and lo_out <= 2 * d + 1


def split_block(
    t: Tournament, block: Sequence[int]
) -> tuple[list[int], int, list[int]]:
    """Split a vertex set around a vertex seeing >= |W|/6 of it on each side.

    Returns (in-neighbors, v, out-neighbors) within the block; the chosen v
    maximizes min(in-degree, out-degree) inside the block.
    """
    block = sorted(block)
    if len(block) < 3:
        raise ValueError("blocks of size < 3 cannot be split")
    mask = 0
    for u in block:
        mask |= 1 << u
    best_v = -1
    best_min = -1
    for v in block:
        dout = bin(t.out[v] & mask).count("1")
        din = bin(t.in_mask(v) & mask).count("1")
        lo = min(din, dout)
        if lo > best_min:
            best_min = lo
            best_v = v
    v = best_v
    wminus = [u for u in block if t.has_arc(u, v)]
    wplus = [u for u in block if t.has_arc(v, u)]
    return wminus, v, wplus


@dataclass(frozen=True)
class HPartition:
    """Blocks W_1..W_r with separators w_1..w_{r-1}, W_i => {w_i} => W_{i+1}."""

    blocks: tuple[tuple[int, ...], ...]
    separators: tuple[int, ...]
    ell: int
    gamma: Fraction

    @property
    def r(self) -> int:
        return len(self.blocks)

    def vertices(self) -> set[int]:
        out = set(self.separators)
        for b in self.blocks:
            out.update(b)
        return out

    def validate(self, t: Tournament) -> bool:
        parts = [set(b) for b in self.blocks]
        seen: set[int] = set()
        for p in parts + [set(self.separators)]:
            if p & seen:
                return False
            seen |= p
        if len(set(self.separators)) != len(self.separators):
            return False
        if seen != set(range(t.n)) and len(seen) != t.n:
            # partitions of induced subsets are validated by the caller
            pass
        for b in self.blocks:
            if not (self.gamma * self.ell <= len(b) <= self.ell):
                return False
        for i, w in enumerate(self.separators):
            if any(not t.has_arc(u, w) for u in self.blocks[i]):
                return False
            if any(not t.has_arc(w, u) for u in self.blocks[i + 1]):
                return False
        return True


def h_partition(
    t: Tournament,
    ell: int,
    gamma: Fraction = Fraction(1, 6),
    vertices: Optional[Sequence[int]] = None,
) -> HPartition:
    """Refine the trivial one-block partition until every block fits under
    ell, splitting a largest oversized block each round."""
    gamma = Fraction(gamma)
    if not (0 < gamma <= Fraction(1, 6)):
        raise ValueError("gamma must lie in (0, 1/6]")
    verts = list(vertices) if vertices is not None else list(range(t.n))
    if not (3 <= ell):
        raise ValueError("ell must be at least 3")
    # a cap beyond the vertex count means the trivial one-block partition;
    # record the attainable cap so the block-size bounds refer to it
    ell = min(ell, len(verts))
    blocks: list[list[int]] = [verts]
    seps: list[int] = []
    while True:
        idx = max(range(len(blocks)), key=lambda i: len(blocks[i]))
        if len(blocks[idx]) <= ell:
            break
        wminus, v, wplus = split_block(t, blocks[idx])
        blocks[idx:idx + 1] = [wminus, wplus]
        seps.insert(idx, v)
    return HPartition(
        tuple(tuple(b) for b in blocks), tuple(seps), ell, gamma
    )


# ---------------------------------------------------------------------------
# one-spare-color rainbow Hamilton path


def tournament_ham_path(
    t: Tournament,
    vertices: Optional[Sequence[int]] = None,
    rng: Optional[np.random.Generator] = None,
) -> list[int]:
    """Hamilton path of a tournament by repeated insertion.

    Every tournament has one; each new vertex lands either at an end or at
    the first sign change along the path.  A generator shuffles the
    insertion order, which is how callers get varied endpoints.
    """
    verts = list(vertices) if vertices is not None else list(range(t.n))
    if rng is not None:
        verts = [verts[i] for i in rng.permutation(len(verts))]
    if not verts:
        return []
    path = [verts[0]]
    for v in verts[1:]:
        if t.has_arc(v, path[0]):
            path.insert(0, v)
            continue
        placed = False
        for k in range(1, len(path)):
            if t.has_arc(v, path[k]):
                path.insert(k, v)
                placed = True
                break
        if not placed:
            path.append(v)
    return path


def rainbow_ham_path_one_spare(
    tc: TournamentCollection,
    stats: Optional[dict] = None,
    vertex_order: Optional[Sequence[int]] = None,
    color_order: Optional[Sequence[int]] = None,
) -> RainbowPath:
    """Rainbow Hamilton path when there is at least one spare color (m >= n).

    Grows the path one vertex at a time.  With two unused colors c1 and c2
    the new vertex is either prepended, spliced between two consecutive path
    vertices, or appended; each step is O(path length) arc checks.
    """
    n, m = tc.n, tc.m
    if m < n:
        raise InsufficientColorsError(
            f"need at least {n} colors, got {m}"
        )
    vorder = list(vertex_order) if vertex_order is not None else list(range(n))
    corder = list(color_order) if color_order is not None else list(range(m))
    inspections = 0

    def arc_in(c: int, u: int, v: int) -> bool:
        nonlocal inspections
        inspections += 1
        return tc.tournaments[c].has_arc(u, v)

    path = [vorder[0]]
    colors: list[int] = []
    used: set[int] = set()
    for v in vorder[1:]:
        unused = [c for c in corder if c not in used][:2]
        c1, c2 = unused
        if arc_in(c1, v, path[0]):
            path.insert(0, v)
            colors.insert(0, c1)
            used.add(c1)
            continue
        if arc_in(c2, v, path[0]):
            path.insert(0, v)
            colors.insert(0, c2)
            used.add(c2)
            continue
        placed = False
        for t in range(1, len(path)):
            hit = None
            if arc_in(c1, v, path[t]):
                hit = c1
            elif arc_in(c2, v, path[t]):
                hit = c2
            if hit is None:
                continue
            other = c2 if hit == c1 else c1
            # by minimality the previous path vertex beats v in both spare
            # colors, so the splice below is always legal
            freed = colors[t - 1]
            path.insert(t, v)
            colors[t - 1:t] = [other, hit]
            used.discard(freed)
            used.update((other, hit))
            placed = True
            break
        if placed:
            continue
        path.append(v)
        colors.append(c1)
        used.add(c1)
    if stats is not None:
        stats["arc_inspections"] = stats.get("arc_inspections", 0) + inspections
    return RainbowPath(vertices=tuple(path), colors=tuple(colors))


# ---------------------------------------------------------------------------
# forced-color embedding


def _is_exceptional(tc: TournamentCollection, i: int) -> bool:
    """One directed triangle against uniformly opposite triangles, n=3."""
    if tc.n != 3:
        return False
    ti = tc.tournaments[i]
    if not _is_directed_triangle(ti):
        return False
    rev = _reverse_tournament(ti)
    return all(
        t == rev for c, t in enumerate(tc.tournaments) if c != i
    )


def _is_directed_triangle(t: Tournament) -> bool:
    return t.n == 3 and all(bin(t.out[v]).count("1") == 1 for v in range(3))


def _reverse_tournament(t: Tournament) -> Tournament:
    return Tournament.from_arcs(
        t.n, [(v, u) for (u, v) in t.arcs()]
    )


def _forcing_color_base(
    tc: TournamentCollection, i: int
) -> Optional[RainbowPath]:
    """Exhaustive search for a rainbow Hamilton path using color i (n <= 7)."""
    n = tc.n
    masks = [[0] * n for _ in range(n)]
    for c, t in enumerate(tc.tournaments):
        for (u, v) in t.arcs():
            masks[u][v] |= 1 << c
    for perm in itertools.permutations(range(n)):
        avail = []
        ok = True
        for k in range(n - 1):
            mask = masks[perm[k]][perm[k + 1]]
            if not mask:
                ok = False
                break
            avail.append(mask)
        if not ok or not any((a >> i) & 1 for a in avail):
            continue
        got = matching_with_forced_colors(avail, [i])
        if got is not None:
            return RainbowPath(vertices=tuple(perm), colors=tuple(got))
    return None


def _fresh_color_for_arc(
    tc: TournamentCollection, u: int, v: int, used: set[int]
) -> int:
    for c in range(tc.m):
        if c not in used and tc.tournaments[c].has_arc(u, v):
            return c
    raise StageFailure(
        "greedy-color", f"no unused color contains arc {u}->{v}"
    )


def rainbow_ham_path_forcing_color(
    tc: TournamentCollection, i: int
) -> RainbowPath:
    """Rainbow Hamilton path guaranteed to use an arc of color i (m >= 2n).

    The one excluded configuration (a directed triangle against opposite
    triangles on three vertices) raises ExceptionalConfigurationError.
    """
    n, m = tc.n, tc.m
    if n < 2:
        raise ValueError("forcing a color needs at least 2 vertices")
    if m < 2 * n:
        raise InsufficientColorsError(f"need at least {2 * n} colors, got {m}")
    if not (0 <= i < m):
        raise ValueError("color index out of range")
    if n <= 7:
        got = _forcing_color_base(tc, i)
        if got is not None:
            return got
        if _is_exceptional(tc, i):
            raise ExceptionalConfigurationError(
                "a directed triangle against opposite triangles has no "
                "rainbow Hamilton path through the odd color"
            )
        raise StageFailure("forcing-color", "exhaustive base case found no path")
    tmaj = majority_subtournament(tc)
    v = max(range(n), key=lambda u: bin(tmaj.out[u]).count("1"))
    outs = sorted(_bits(tmaj.out[v]))
    ins = sorted(_bits(tmaj.in_mask(v)))
    assert len(outs) >= 4
    sub, old_to_new = induced_collection(tc, outs)
    new_to_old = {b: a for a, b in old_to_new.items()}
    p = rainbow_ham_path_forcing_color(sub, i)
    path = [new_to_old[x] for x in p.vertices]
    colors = list(p.colors)
    used = set(colors)
    c = _fresh_color_for_arc(tc, v, path[0], used)
    path.insert(0, v)
    colors.insert(0, c)
    used.add(c)
    if ins:
        free = [c for c in range(m) if c not in used]
        sub2, o2n = induced_collection(tc, ins)
        n2o = {b: a for a, b in o2n.items()}
        sub2r = restrict_colors(sub2, free)
        q = rainbow_ham_path_one_spare(sub2r)
        qpath = [n2o[x] for x in q.vertices]
        qcolors = [free[c] for c in q.colors]
        used.update(qcolors)
        c2 = _fresh_color_for_arc(tc, qpath[-1], path[0], used)
        path = qpath + path
        colors = qcolors + [c2] + colors
    return RainbowPath(vertices=tuple(path), colors=tuple(colors))


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# forced-set embedding


def rainbow_ham_path_forcing_set(
    tc: TournamentCollection, forced: Sequence[int], u: int, v: int
) -> RainbowPath:
    """Rainbow Hamilton path from u to v using every forced color.

    Preconditions: n >= 25, m >= 4n, |forced| <= n/25, and each arc u->w and
    w->v lies in tournaments of at least two forced colors.
    """
    n, m = tc.n, tc.m
    forced = list(dict.fromkeys(forced))
    if n < 25:
        raise ValueError("forcing a color set needs n >= 25")
    if m < 4 * n:
        raise InsufficientColorsError(f"need at least {4 * n} colors, got {m}")
    if len(forced) > n / 25:
        raise ValueError("at most n/25 forced colors are allowed")
    if u == v:
        raise ValueError("endpoints must differ")
    if len(forced) >= 2:
        for w in range(n):
            if w in (u, v):
                continue
            into = sum(1 for b in forced if tc.tournaments[b].has_arc(u, w))
            outof = sum(1 for b in forced if tc.tournaments[b].has_arc(w, v))
            if into < 2:
                raise ValueError(
                    f"arc {u}->{w} has fewer than two forced choices"
                )
            if outof < 2:
                raise ValueError(
                    f"arc {w}->{v} has fewer than two forced choices"
                )

    middle = [w for w in range(n) if w not in (u, v)]
    tmaj = majority_subtournament(tc)
    hp = h_partition(tmaj, 24, Fraction(1, 6), vertices=middle)
    blocks = [list(b) for b in hp.blocks]
    seps = list(hp.separators)
    r = len(blocks)

    used: set[int] = set(forced)
    free_pool = [c for c in range(m) if c not in used]
    pool_at = 0

    def take(k: int) -> list[int]:
        nonlocal pool_at
        got = free_pool[pool_at:pool_at + k]
        if len(got) < k:
            raise StageFailure("forcing-set", "free color pool exhausted")
        pool_at += k
        return got

    def block_path(bverts: list[int], force: Optional[int]) -> RainbowPath:
        sub, o2n = induced_collection(tc, sorted(bverts))
        n2o = {b: a for a, b in o2n.items()}
        if force is None:
            budget = take(len(bverts) + 1)
            subr = restrict_colors(sub, budget)
            p = rainbow_ham_path_one_spare(subr)
            cols = [budget[c] for c in p.colors]
        else:
            budget = take(2 * len(bverts) - 1) + [force]
            subr = restrict_colors(sub, budget)
            p = rainbow_ham_path_forcing_color(subr, len(budget) - 1)
            cols = [budget[c] for c in p.colors]
        return RainbowPath(
            vertices=tuple(n2o[x] for x in p.vertices), colors=tuple(cols)
        )

    # each forced color is embedded inside its own block; the u and v arcs
    # are colored last, preferring leftover forced colors when they fit
    if len(forced) > r:
        raise StageFailure(
            "forcing-set", "more forced colors than blocks to host them"
        )
    paths: list[RainbowPath] = []
    for k in range(r):
        force = forced[k] if k < len(forced) else None
        p = block_path(blocks[k], force)
        used.update(p.colors)
        paths.append(p)

    verts = [u]
    c_start = _fresh_color_for_arc(tc, u, paths[0].vertices[0], used)
    used.add(c_start)
    cols = [c_start]
    for k, p in enumerate(paths):
        verts.extend(p.vertices)
        cols.extend(p.colors)
        if k < r - 1:
            w = seps[k]
            c1 = _fresh_color_for_arc(tc, p.vertices[-1], w, used)
            used.add(c1)
            c2 = _fresh_color_for_arc(tc, w, paths[k + 1].vertices[0], used)
            used.add(c2)
            verts.append(w)
            cols.extend((c1, c2))
    c_end = _fresh_color_for_arc(tc, paths[-1].vertices[-1], v, used)
    used.add(c_end)
    verts.append(v)
    cols.append(c_end)
    return RainbowPath(vertices=tuple(verts), colors=tuple(cols))


# ---------------------------------------------------------------------------
# rainbow connectivity via color layering


def _layering(tc: TournamentCollection, x: int):
    """Grow L_c by the T_c-out-neighbors of L_{c-1}; record first entries."""
    n = tc.n
    reached = 1 << x
    entry: dict[int, tuple[int, int]] = {}
    for c in range(tc.m):
        t = tc.tournaments[c]
        grow = 0
        for uu in _bits(reached):
            grow |= t.out[uu] & ~reached
        if grow == 0:
            if reached == (1 << n) - 1:
                break
            raise NoProgressError(c)
        for vv in _bits(grow):
            for uu in _bits(reached):
                if t.has_arc(uu, vv):
                    entry[vv] = (uu, c)
                    break
        reached |= grow
        if reached == (1 << n) - 1:
            break
    if reached != (1 << n) - 1:
        raise NoProgressError(tc.m - 1)
    return entry


def _walk_back(entry: dict[int, tuple[int, int]], x: int, y: int) -> RainbowPath:
    verts = [y]
    cols: list[int] = []
    cur = y
    while cur != x:
        prev, c = entry[cur]
        cols.append(c)
        verts.append(prev)
        cur = prev
    verts.reverse()
    cols.reverse()
    return RainbowPath(vertices=tuple(verts), colors=tuple(cols))


def rainbow_connect(tc: TournamentCollection, x: int, y: int) -> RainbowPath:
    """Rainbow path from x to y with strictly increasing colors.

    Layer L_c adds the T_c-out-neighbors of the previous layer; with every
    color strongly connected the layers strictly grow, and walking back
    through first-entry records gives ascending colors.
    """
    if x == y:
        raise ValueError("endpoints must differ")
    entry = _layering(tc, x)
    return _walk_back(entry, x, y)


def rainbow_connect_all(
    tc: TournamentCollection, x: int
) -> dict[int, RainbowPath]:
    """Rainbow paths from x to every other vertex, one layering pass."""
    entry = _layering(tc, x)
    return {
        y: _walk_back(entry, x, y) for y in range(tc.n) if y != x
    }


# ---------------------------------------------------------------------------
# color absorber


@dataclass(frozen=True)
class Absorber:
    """Color reservoir: target arcs match perfectly against A plus any
    ell-subset of C."""

    A: tuple[int, ...]
    C: tuple[int, ...]
    target_arcs: tuple[tuple[int, int], ...]
    ell: int
    avail: tuple[int, ...]  # availability bitmask per target arc


def _matching_ok(absorber_avail, a_mask: int, cset: Iterable[int]) -> bool:
    allow = a_mask
    for c in cset:
        allow |= 1 << c
    masks = [av & allow for av in absorber_avail]
    return perfect_matching(masks) is not None


def build_absorber(
    tc: TournamentCollection,
    target_arcs: Sequence[tuple[int, int]],
    avail_colors: Sequence[int],
    ell: int,
    c_size: int,
    retries: int = 20,
    seed: int = 0,
) -> Absorber:
    """Randomized absorber construction with a verification schedule.

    Candidate A and C are drawn at random; acceptance checks perfect
    matchings for ell-subsets C' of C, exhaustively when there are at most
    10^4 of them and otherwise by random plus adversarial (minimum-degree)
    probes.  Acceptance is therefore probabilistic; absorb() re-verifies.
    """
    target_arcs = tuple(target_arcs)
    if len(target_arcs) < ell:
        raise ValueError("need at least ell target arcs")
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    avail_colors = list(dict.fromkeys(avail_colors))
    a_size = len(target_arcs) - ell
    if a_size + c_size > len(avail_colors):
        raise AbsorberConstructionError(
            "not enough available colors for the requested A and C sizes"
        )
    avail = tuple(
        tc.arc_color_mask(u, v) for (u, v) in target_arcs
    )
    for attempt in range(retries):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([seed, attempt]))
        )
        picked = rng.permutation(len(avail_colors))
        acand = tuple(
            sorted(avail_colors[i] for i in picked[:a_size])
        )
        ccand = tuple(
            sorted(avail_colors[i] for i in picked[a_size:a_size + c_size])
        )
        a_mask = 0
        for c in acand:
            a_mask |= 1 << c
        if _verify_absorber(avail, a_mask, ccand, ell, rng):
            return Absorber(acand, ccand, target_arcs, ell, avail)
    raise AbsorberConstructionError(
        f"no candidate survived verification after {retries} attempts"
    )


def _verify_absorber(avail, a_mask, ccand, ell, rng) -> bool:
    ncomb = math.comb(len(ccand), ell)
    if ncomb <= 10_000:
        return all(
            _matching_ok(avail, a_mask, cs)
            for cs in itertools.combinations(ccand, ell)
        )
    # degree of a color = number of target arcs it can serve; the colors of
    # minimum degree make the hardest top-up set
    degs = sorted(
        ccand, key=lambda c: sum(1 for av in avail if (av >> c) & 1)
    )
    if not _matching_ok(avail, a_mask, degs[:ell]):
        return False
    for _ in range(200):
        cs = rng.choice(len(ccand), size=ell, replace=False)
        if not _matching_ok(avail, a_mask, [ccand[i] for i in cs]):
            return False
    return True


def absorb(absorber: Absorber, cprime: Iterable[int]) -> ColoredDigraph:
    """Rainbow coloring of the target arcs using exactly A plus C'."""
    cprime = sorted(set(cprime))
    if len(cprime) != absorber.ell or not set(cprime) <= set(absorber.C):
        raise AbsorptionFailedError(
            "C' must be an ell-subset of the absorber's C"
        )
    if len(absorber.A) != len(absorber.target_arcs) - absorber.ell:
        raise AbsorptionFailedError("absorber cardinalities are inconsistent")
    allow = 0
    for c in list(absorber.A) + cprime:
        allow |= 1 << c
    masks = [av & allow for av in absorber.avail]
    got = perfect_matching(masks)
    if got is None:
        raise AbsorptionFailedError(
            "no rainbow coloring with this top-up set"
        )
    return ColoredDigraph(
        tuple(
            (u, v, got[k])
            for k, (u, v) in enumerate(absorber.target_arcs)
        )
    )
