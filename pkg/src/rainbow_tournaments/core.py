"""Data model for tournaments, collections and colored subdigraphs.

Vertices are ``0..n-1``.  A color is the index of a tournament inside a
collection.  Orientation bits for one tournament are stored as per-vertex
out-neighbour bitmasks (arbitrary-precision ints), which makes arc queries,
degree counts and induced restrictions cheap even for a few thousand
vertices.

The canonical interchange format for a collection is JSON::

    {"n": <int>, "m": <int>, "tournaments": ["010...", ...]}

where each string has length n(n-1)/2 over {"0","1"}; position p runs over
the pairs (i,j), i<j, in lexicographic order and "1" means the arc i->j.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "Tournament",
    "TournamentCollection",
    "ColoredDigraph",
    "RainbowPath",
    "RainbowCycle",
    "MajorityDigraph",
    "color_set_of_arc",
    "threshold_digraph",
    "majority_subtournament",
    "induced_collection",
    "is_strongly_connected",
    "validate_transversal",
    "transversal_violations",
    "pair_index",
    "iter_pairs",
]


def iter_pairs(n: int):
    """Yield the unordered pairs (i, j), i < j, in lexicographic order."""
    for i in range(n - 1):
        for j in range(i + 1, n):
            yield i, j


def pair_index(n: int, i: int, j: int) -> int:
    """Position of the pair (i, j), i < j, in the lexicographic enumeration."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    # pairs with first coordinate < i, plus offset within row i
    return i * n - i * (i + 1) // 2 + (j - i - 1)


class Tournament:
    """A complete antisymmetric orientation on ``n`` labeled vertices."""

    __slots__ = ("n", "out", "_hash")

    def __init__(self, n: int, out: Sequence[int]):
        if n < 1:
            raise ValueError("tournament needs at least one vertex")
        if len(out) != n:
            raise ValueError("out-mask count must equal n")
        self.n = n
        self.out = tuple(out)
        self._hash = None
        self._check()

    def _check(self) -> None:
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.out):
            if mask & ~full:
                raise ValueError(f"out-mask of vertex {v} out of range")
        mat = self._bool_matrix()
        if mat.diagonal().any():
            raise ValueError("self-loop present")
        both = mat & mat.T
        if both.any():
            v, u = map(int, np.argwhere(both)[0])
            raise ValueError(f"pair ({v},{u}) not oriented exactly once")
        missing = ~(mat | mat.T)
        np.fill_diagonal(missing, False)
        if missing.any():
            v, u = map(int, np.argwhere(missing)[0])
            raise ValueError(f"pair ({v},{u}) not oriented exactly once")

    def _bool_matrix(self) -> np.ndarray:
        """Dense adjacency matrix; mat[u, v] iff u->v."""
        nbytes = (self.n + 7) // 8
        buf = b"".join(m.to_bytes(nbytes, "little") for m in self.out)
        bits = np.unpackbits(
            np.frombuffer(buf, dtype=np.uint8).reshape(self.n, nbytes),
            axis=1, bitorder="little",
        )
        return bits[:, : self.n].astype(bool)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Tournament":
        out = [0] * n
        for u, v in arcs:
            out[u] |= 1 << v
        return cls(n, out)

    @classmethod
    def from_pair_bits(cls, n: int, bits: str) -> "Tournament":
        want = n * (n - 1) // 2
        if len(bits) != want or set(bits) - {"0", "1"}:
            raise ValueError(f"need a {{0,1}} string of length {want}")
        out = [0] * n
        p = 0
        for i, j in iter_pairs(n):
            if bits[p] == "1":
                out[i] |= 1 << j
            else:
                out[j] |= 1 << i
            p += 1
        return cls(n, out)

    @classmethod
    def from_bool_matrix(cls, mat: np.ndarray) -> "Tournament":
        """Build from a dense adjacency matrix (mat[u, v] truthy iff u->v)."""
        n = mat.shape[0]
        packed = np.packbits(mat.astype(np.uint8), axis=1, bitorder="little")
        out = [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]
        return cls(n, out)

    # -- queries ------------------------------------------------------

    def has_arc(self, u: int, v: int) -> bool:
        return bool((self.out[u] >> v) & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.n - 1 - self.out[v].bit_count()

    def in_mask(self, v: int) -> int:
        full = (1 << self.n) - 1
        return full & ~self.out[v] & ~(1 << v)

    def arcs(self):
        for u in range(self.n):
            mask = self.out[u]
            while mask:
                low = mask & -mask
                yield u, low.bit_length() - 1
                mask ^= low

    def pair_bits(self) -> str:
        chunks = []
        for i, j in iter_pairs(self.n):
            chunks.append("1" if (self.out[i] >> j) & 1 else "0")
        return "".join(chunks)

    def restrict(self, vertices: Sequence[int]) -> "Tournament":
        """Induced subtournament; vertex k of the result is vertices[k]."""
        idx = np.asarray(vertices, dtype=np.intp)
        sub = self._bool_matrix()[np.ix_(idx, idx)]
        packed = np.packbits(
            sub.astype(np.uint8), axis=1, bitorder="little"
        )
        k = len(vertices)
        # restriction of a valid tournament cannot break the invariants,
        # so the checked constructor is bypassed
        t = object.__new__(Tournament)
        t.n = k
        t.out = tuple(
            int.from_bytes(packed[v].tobytes(), "little") for v in range(k)
        )
        t._hash = None
        return t

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tournament)
            and self.n == other.n
            and self.out == other.out
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.out))
        return self._hash

    def __repr__(self) -> str:
        return f"Tournament(n={self.n}, bits={self.pair_bits()!r})"


class TournamentCollection:
    """An ordered family of tournaments on a shared vertex set.

    Colors are the family indices ``0..m-1``.
    """

    __slots__ = ("n", "m", "tournaments")

    def __init__(self, tournaments: Sequence[Tournament]):
        if not tournaments:
            raise ValueError("collection must contain at least one tournament")
        n = tournaments[0].n
        for t in tournaments:
            if t.n != n:
                raise ValueError("all tournaments must share the vertex set")
        self.n = n
        self.m = len(tournaments)
        self.tournaments = tuple(tournaments)

    def colors(self) -> range:
        return range(self.m)

    def arc_color_mask(self, u: int, v: int) -> int:
        """Bitmask over colors i with the arc u->v in tournament i."""
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"invalid arc ({u},{v}) for n={self.n}")
        mask = 0
        for i, t in enumerate(self.tournaments):
            if (t.out[u] >> v) & 1:
                mask |= 1 << i
        return mask

    # -- JSON (canonical, bit-exact) ----------------------------------

    def to_json(self) -> str:
        obj = {
            "n": self.n,
            "m": self.m,
            "tournaments": [t.pair_bits() for t in self.tournaments],
        }
        return json.dumps(obj, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "TournamentCollection":
        obj = json.loads(text)
        n, m = obj["n"], obj["m"]
        bits = obj["tournaments"]
        if len(bits) != m:
            raise ValueError("tournament count does not match m")
        return cls([Tournament.from_pair_bits(n, b) for b in bits])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TournamentCollection)
            and self.tournaments == other.tournaments
        )

    def __hash__(self) -> int:
        return hash(self.tournaments)

    def __repr__(self) -> str:
        return f"TournamentCollection(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ColoredDigraph:
    """A set of arcs, each carrying a color (tail, head, color)."""

    arcs: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for t, h, _ in self.arcs:
            if t == h:
                raise ValueError("self-loops are not allowed")
            if (t, h) in seen:
                raise ValueError(f"duplicate arc ({t},{h})")
            seen.add((t, h))

    def is_rainbow(self) -> bool:
        cols = [c for _, _, c in self.arcs]
        return len(cols) == len(set(cols))

    def to_json(self) -> str:
        return json.dumps([[t, h, c] for t, h, c in self.arcs],
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ColoredDigraph":
        return cls(tuple((t, h, c) for t, h, c in json.loads(text)))


@dataclass(frozen=True)
class RainbowPath:
    """A vertex sequence with one color per step; vertices and colors distinct."""

    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.colors) + 1:
            raise ValueError("a path on k vertices has k-1 colored arcs")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path vertices must be distinct")
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("path colors must be distinct")

    def __len__(self) -> int:
        return len(self.vertices)

    def arcs(self) -> ColoredDigraph:
        trip = tuple(
            (self.vertices[t], self.vertices[t + 1], self.colors[t])
            for t in range(len(self.colors))
        )
        return ColoredDigraph(trip)

    def valid(self, coll: TournamentCollection) -> bool:
        return validate_transversal(coll, self.arcs())

    def is_hamilton(self, coll: TournamentCollection) -> bool:
        return len(self.vertices) == coll.n and self.valid(coll)


@dataclass(frozen=True)
class RainbowCycle:
    """A cyclic vertex sequence; colors[k-1] colors the closing arc."""

    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.colors):
            raise ValueError("a cycle on k vertices has k colored arcs")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("cycle vertices must be distinct")
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("cycle colors must be distinct")
        if len(self.vertices) < 3:
            raise ValueError("directed cycles need at least three vertices")

    def __len__(self) -> int:
        return len(self.vertices)

    def arcs(self) -> ColoredDigraph:
        k = len(self.vertices)
        trip = tuple(
            (self.vertices[t], self.vertices[(t + 1) % k], self.colors[t])
            for t in range(k)
        )
        return ColoredDigraph(trip)

    def valid(self, coll: TournamentCollection) -> bool:
        return validate_transversal(coll, self.arcs())

    def is_hamilton(self, coll: TournamentCollection) -> bool:
        return len(self.vertices) == coll.n and self.valid(coll)


@dataclass(frozen=True)
class MajorityDigraph:
    """Arcs present in at least ceil(gamma * |colors|) member tournaments."""

    n: int
    gamma: Fraction
    arcs: frozenset[tuple[int, int]]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs


# ---------------------------------------------------------------------------
# operations


def color_set_of_arc(coll: TournamentCollection, u: int, v: int) -> set[int]:
    """Colors whose tournament contains the arc u->v."""
    mask = coll.arc_color_mask(u, v)
    return _mask_to_set(mask)


def _mask_to_set(mask: int) -> set[int]:
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length() - 1)
        mask ^= low
    return out


def threshold_digraph(
    coll: TournamentCollection,
    colors: Optional[Iterable[int]] = None,
    gamma: Fraction | float = Fraction(1, 2),
) -> MajorityDigraph:
    """The digraph of arcs present in at least ceil(gamma*|colors|) colors."""
    gamma = Fraction(gamma).limit_denominator(10**9) if not isinstance(gamma, Fraction) else gamma
    if not 0 < gamma <= 1:
        raise ValueError("gamma must lie in (0, 1]")
    if colors is None:
        color_list = list(range(coll.m))
    else:
        color_list = sorted(set(colors))
        if not color_list:
            raise ValueError("color set must be nonempty")
        if color_list[0] < 0 or color_list[-1] >= coll.m:
            raise ValueError("colors out of range")
    need = math.ceil(gamma * len(color_list))
    need = max(need, 1)
    arcs = set()
    for u in range(coll.n):
        for v in range(coll.n):
            if u == v:
                continue
            cnt = sum(
                1 for i in color_list if (coll.tournaments[i].out[u] >> v) & 1
            )
            if cnt >= need:
                arcs.add((u, v))
    return MajorityDigraph(coll.n, gamma, frozenset(arcs))


def _pair_counts(coll: TournamentCollection, color_list: Sequence[int]) -> np.ndarray:
    """counts[u, v] = number of listed colors whose tournament has u->v."""
    n = coll.n
    acc = np.zeros((n, n), dtype=np.uint32)
    width = (n + 7) // 8
    for i in color_list:
        t = coll.tournaments[i]
        rows = np.frombuffer(
            b"".join(m.to_bytes(width, "little") for m in t.out), dtype=np.uint8
        ).reshape(n, width)
        acc += np.unpackbits(rows, axis=1, bitorder="little")[:, :n]
    return acc


def majority_subtournament(
    coll: TournamentCollection,
    colors: Optional[Iterable[int]] = None,
    gamma: Fraction | float = Fraction(1, 2),
) -> Tournament:
    """A tournament inside the gamma-threshold digraph (gamma <= 1/2).

    Tie-breaking: the direction with the strictly larger count wins; on
    equal counts the arc u->v with u < v is chosen.
    """
    gamma = Fraction(gamma) if not isinstance(gamma, Fraction) else gamma
    if gamma > Fraction(1, 2):
        raise ValueError("majority subtournament needs gamma <= 1/2")
    if colors is None:
        color_list = list(range(coll.m))
    else:
        color_list = sorted(set(colors))
        if not color_list:
            raise ValueError("color set must be nonempty")
    n = coll.n
    if n * n * len(color_list) >= 1 << 22:
        counts = _pair_counts(coll, color_list)
        fwd = counts >= (counts.T)  # u<v handled below
        mat = np.zeros((n, n), dtype=bool)
        iu = np.triu_indices(n, k=1)
        mat[iu] = fwd[iu]
        il = (iu[1], iu[0])
        mat[il] = ~fwd[iu]
        return Tournament.from_bool_matrix(mat)
    out = [0] * n
    for i, j in iter_pairs(n):
        cnt = sum(
            1 for c in color_list if (coll.tournaments[c].out[i] >> j) & 1
        )
        if 2 * cnt >= len(color_list):
            out[i] |= 1 << j
        else:
            out[j] |= 1 << i
    return Tournament(n, out)


def induced_collection(
    coll: TournamentCollection,
    vertices: Optional[Iterable[int]] = None,
    colors: Optional[Iterable[int]] = None,
) -> tuple[TournamentCollection, dict[int, int]]:
    """Vertex- and/or color-induced collection, with the old->new vertex map."""
    if vertices is None:
        vert_list = list(range(coll.n))
    else:
        vert_list = sorted(set(vertices))
        if not vert_list:
            raise ValueError("vertex set must be nonempty")
        if vert_list[0] < 0 or vert_list[-1] >= coll.n:
            raise ValueError("vertices out of range")
    if colors is None:
        color_list = list(range(coll.m))
    else:
        color_list = sorted(set(colors))
        if not color_list:
            raise ValueError("color set must be nonempty")
        if color_list[0] < 0 or color_list[-1] >= coll.m:
            raise ValueError("colors out of range")
    sub = [coll.tournaments[c].restrict(vert_list) for c in color_list]
    vmap = {old: new for new, old in enumerate(vert_list)}
    return TournamentCollection(sub), vmap


def is_strongly_connected(t: Tournament) -> bool:
    """True iff the tournament has a single strongly connected component."""
    n = t.n
    if n == 1:
        return True
    full = (1 << n) - 1

    def reach(masks) -> int:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= masks[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    if reach(t.out) != full:
        return False
    rev = [t.in_mask(v) for v in range(n)]
    return reach(rev) == full


def transversal_violations(
    coll: TournamentCollection, d: ColoredDigraph
) -> list[str]:
    """Diagnostics for a failed transversal check; empty list means valid."""
    problems = []
    seen_colors: dict[int, tuple[int, int]] = {}
    for t, h, c in d.arcs:
        if not (0 <= c < coll.m):
            problems.append(f"arc ({t},{h}): color {c} out of range")
            continue
        if c in seen_colors:
            problems.append(
                f"color {c} repeated on ({t},{h}) and {seen_colors[c]}"
            )
        else:
            seen_colors[c] = (t, h)
        if not (0 <= t < coll.n and 0 <= h < coll.n):
            problems.append(f"arc ({t},{h}) out of vertex range")
            continue
        if not coll.tournaments[c].has_arc(t, h):
            problems.append(f"arc ({t},{h}) is not in tournament {c}")
    return problems


def validate_transversal(coll: TournamentCollection, d: ColoredDigraph) -> bool:
    """True iff colors are pairwise distinct and each arc lies in its tournament."""
    return not transversal_violations(coll, d)
