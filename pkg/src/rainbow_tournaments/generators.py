"""Named and random instance families.

All randomness goes through numpy's PCG64 seeded from explicit
``SeedSequence`` keys, so identical (kind, n, m, seed) always produces
byte-identical JSON on every platform.  Each tournament of a random
collection draws from its own spawned stream, keyed by (seed, index,
attempt); strong connectivity is obtained by rejection, which advances the
attempt counter deterministically.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .core import Tournament, TournamentCollection, is_strongly_connected

__all__ = [
    "GeneratorSpec",
    "transitive_tournament",
    "rotational_tournament",
    "prop14_tprime",
    "prop14_collection",
    "fig1_counterexamples",
    "random_tournament",
    "random_collection",
    "generate",
    "KINDS",
]

KINDS = (
    "transitive",
    "random_uniform",
    "random_strongly_connected",
    "directed_cycle_tournament",
    "prop14_collection",
    "fig1_path_counterexample",
    "fig1_cycle_counterexample",
)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    m: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")


def transitive_tournament(n: int) -> Tournament:
    """Arc i->j iff i < j."""
    if n < 1:
        raise ValueError("n must be positive")
    full = (1 << n) - 1
    return Tournament(n, [(full >> (v + 1)) << (v + 1) for v in range(n)])


def rotational_tournament(n: int) -> Tournament:
    """The cyclic tournament on odd n: arc i->j iff (j-i) mod n <= (n-1)/2."""
    if n < 3 or n % 2 == 0:
        raise ValueError("rotational tournament needs odd n >= 3")
    half = (n - 1) // 2
    out = [0] * n
    for i in range(n):
        for d in range(1, half + 1):
            out[i] |= 1 << ((i + d) % n)
    return Tournament(n, out)


def prop14_tprime(n: int) -> Tournament:
    """The strongly connected near-transitive tournament: i->j for j >= i+2
    and the backward arcs (i+1)->i."""
    if n < 3:
        raise ValueError("n must be at least 3")
    out = [0] * n
    for i in range(n):
        for j in range(i + 2, n):
            out[i] |= 1 << j
        if i + 1 < n:
            out[i + 1] |= 1 << i
    return Tournament(n, out)


def prop14_collection(n: int) -> TournamentCollection:
    """Two transitive colors and n-2 copies of the near-transitive tournament.

    Has no transversal Hamilton cycle for any n >= 3: a rainbow path from
    vertex n-1 down to vertex 0 must walk the n-1 backward arcs, but only
    n-2 colors contain them.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    t = transitive_tournament(n)
    tp = prop14_tprime(n)
    return TournamentCollection([t, t] + [tp] * (n - 2))


def _triangle(n3_forward: bool) -> Tournament:
    if n3_forward:
        return Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    return Tournament.from_arcs(3, [(1, 0), (2, 1), (0, 2)])


def fig1_counterexamples() -> tuple[TournamentCollection, TournamentCollection]:
    """(path instance, cycle instance): the n=3 triangle counterexamples.

    Path instance: two opposite directed triangles (m=2), no transversal
    Hamilton path.  Cycle instance: two equal triangles plus the reverse
    (m=3), no transversal Hamilton cycle.
    """
    fwd = _triangle(True)
    rev = _triangle(False)
    return (
        TournamentCollection([fwd, rev]),
        TournamentCollection([fwd, fwd, rev]),
    )


@functools.lru_cache(maxsize=64)
def _triu_cache(n: int):
    return np.triu_indices(n, k=1)


def _bits_to_tournament(n: int, bits: np.ndarray) -> Tournament:
    mat = np.zeros((n, n), dtype=np.uint8)
    iu = _triu_cache(n)
    mat[iu] = bits
    mat[(iu[1], iu[0])] = 1 - bits
    np.fill_diagonal(mat, 0)
    # correct by construction: exactly one direction per pair, no loops,
    # so skip the validating constructor
    packed = np.packbits(mat, axis=1, bitorder="little")
    t = object.__new__(Tournament)
    t.n = n
    t.out = tuple(
        int.from_bytes(packed[v].tobytes(), "little") for v in range(n)
    )
    t._hash = None
    return t


def _draw_tournament(n: int, seed: int, index: int, attempt: int) -> Tournament:
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([seed, index, attempt]))
    )
    bits = rng.integers(0, 2, size=n * (n - 1) // 2, dtype=np.uint8)
    return _bits_to_tournament(n, bits)


def random_tournament(
    n: int, seed: int, *, strongly_connected: bool = False, index: int = 0
) -> Tournament:
    """A uniformly random orientation of each pair, from a seeded stream."""
    if n < 1:
        raise ValueError("n must be positive")
    if strongly_connected and n < 3:
        raise ValueError("strong connectivity needs n >= 3")
    attempt = 0
    while True:
        t = _draw_tournament(n, seed, index, attempt)
        if not strongly_connected or is_strongly_connected(t):
            return t
        attempt += 1


def random_collection(
    n: int,
    m: int,
    seed: int,
    strongly_connected: bool = False,
    *,
    strongly_connected_count: int | None = None,
) -> TournamentCollection:
    """m independent random tournaments on n vertices.

    ``strongly_connected_count`` restricts the rejection sampling to the
    first that many members (used for the cycle theorem's "all but one"
    hypothesis); ``strongly_connected=True`` applies it to all members.
    """
    if m < 1:
        raise ValueError("m must be positive")
    k = m if strongly_connected else (strongly_connected_count or 0)
    if k > 0 and n < 3:
        raise ValueError("strong connectivity needs n >= 3")
    return TournamentCollection(
        [
            random_tournament(n, seed, strongly_connected=(i < k), index=i)
            for i in range(m)
        ]
    )


def generate(spec: GeneratorSpec) -> TournamentCollection:
    """Materialize a GeneratorSpec; single tournaments come back as m=1."""
    kind, n, m, seed = spec.kind, spec.n, spec.m, spec.seed
    if kind == "transitive":
        return TournamentCollection([transitive_tournament(n)])
    if kind == "directed_cycle_tournament":
        return TournamentCollection([rotational_tournament(n)])
    if kind == "random_uniform":
        return random_collection(n, m, seed)
    if kind == "random_strongly_connected":
        return random_collection(n, m, seed, strongly_connected=True)
    if kind == "prop14_collection":
        return prop14_collection(n)
    if kind == "fig1_path_counterexample":
        return fig1_counterexamples()[0]
    if kind == "fig1_cycle_counterexample":
        return fig1_counterexamples()[1]
    raise ValueError(f"unknown kind {kind!r}")
