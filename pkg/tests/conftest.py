"""Shared helpers for the test suite."""

import itertools

from rainbow_tournaments.core import Tournament, TournamentCollection


def all_tournaments(n):
    """Every tournament on n labeled vertices."""
    npairs = n * (n - 1) // 2
    for bits in itertools.product("01", repeat=npairs):
        yield Tournament.from_pair_bits(n, "".join(bits))


def all_collections(n, m):
    """Every collection of m tournaments on n labeled vertices."""
    ts = list(all_tournaments(n))
    for combo in itertools.product(ts, repeat=m):
        yield TournamentCollection(list(combo))


def directed_triangle(forward=True):
    """The 3-cycle 0->1->2->0, or its reverse."""
    if forward:
        return Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    return Tournament.from_arcs(3, [(1, 0), (2, 1), (0, 2)])
