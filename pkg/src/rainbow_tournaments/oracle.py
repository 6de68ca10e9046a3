"""Exact search for transversal Hamilton paths and cycles.

Two independent engines are provided.  The fast one backtracks over vertex
sequences and prunes with an incremental arcs-vs-colors matching; the slow
one enumerates vertex permutations outright and asks for one matching per
permutation.  Agreement between the two on small instances is what the test
suite leans on.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .core import ColoredDigraph, RainbowCycle, RainbowPath, TournamentCollection
from .matching import IncrementalMatcher, perfect_matching

__all__ = [
    "SearchBudget",
    "OracleOutcome",
    "exact_transversal_ham_path",
    "exact_transversal_ham_cycle",
    "exact_transversal_ham_path_perm",
    "exact_transversal_ham_cycle_perm",
    "count_transversal_ham_paths",
    "exact_rainbow_path",
    "is_strongly_rainbow_connected",
]

FOUND = "Found"
NOT_EXISTS = "NotExists"
BUDGET_EXHAUSTED = "BudgetExhausted"


class _BudgetExceeded(Exception):
    pass


@dataclass
class SearchBudget:
    """Node / wall-clock limits for exact search.  None means unlimited."""

    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None
    nodes: int = 0
    _deadline: Optional[float] = field(default=None, repr=False)

    def start(self) -> None:
        if self.max_seconds is not None:
            self._deadline = time.monotonic() + self.max_seconds

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _BudgetExceeded
        if self._deadline is not None and (self.nodes & 0x3FF) == 0:
            if time.monotonic() > self._deadline:
                raise _BudgetExceeded


@dataclass
class OracleOutcome:
    """Result of an exact search.

    status is one of ``Found``, ``NotExists``, ``BudgetExhausted``.
    witness carries the path or cycle when status is Found.  notes is free
    text (e.g. which precondition was unmet).
    """

    status: str
    witness: Optional[object] = None
    nodes_expanded: int = 0
    millis: float = 0.0
    notes: str = ""

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        wit = None
        if self.witness is not None:
            w = self.witness
            if isinstance(w, (RainbowPath, RainbowCycle)):
                wit = {
                    "vertices": list(w.vertices),
                    "colors": list(w.colors),
                    "kind": "cycle" if isinstance(w, RainbowCycle) else "path",
                }
            else:
                wit = w
        return {
            "status": self.status,
            "witness": wit,
            "nodes_expanded": self.nodes_expanded,
            "millis": round(self.millis, 3),
            "notes": self.notes,
        }


def _arc_masks(tc: TournamentCollection) -> list[list[int]]:
    """masks[u][v] = bitmask of colors whose tournament has the arc u->v."""
    n = tc.n
    masks = [[0] * n for _ in range(n)]
    for c, t in enumerate(tc.tournaments):
        for u in range(n):
            out = t.out[u]
            while out:
                low = out & -out
                v = low.bit_length() - 1
                out ^= low
                masks[u][v] |= 1 << c
    return masks


def _search_path(
    tc: TournamentCollection,
    budget: SearchBudget,
    start: Optional[int],
    end: Optional[int],
    use_matching_prune: bool,
) -> tuple[str, Optional[RainbowPath]]:
    n = tc.n
    masks = _arc_masks(tc)
    matcher = IncrementalMatcher() if use_matching_prune else None
    order: list[int] = []
    used = 0
    full = (1 << n) - 1

    def extend() -> Optional[list[int]]:
        nonlocal used
        if len(order) == n:
            return list(order)
        budget.tick()
        last = order[-1]
        for v in range(n):
            if (used >> v) & 1:
                continue
            if end is not None and v == end and len(order) != n - 1:
                continue
            mask = masks[last][v]
            if not mask:
                continue
            if matcher is not None:
                if not matcher.push(mask):
                    continue
            order.append(v)
            used |= 1 << v
            got = extend()
            order.pop()
            used ^= 1 << v
            if matcher is not None:
                matcher.pop()
            if got is not None:
                return got
        return None

    starts = [start] if start is not None else list(range(n))
    for s in starts:
        if end is not None and s == end and n > 1:
            continue
        order = [s]
        used = 1 << s
        budget.tick()
        got = extend()
        if got is not None:
            return FOUND, _finish_path(tc, masks, got)
    return NOT_EXISTS, None


def _finish_path(
    tc: TournamentCollection, masks, order: Sequence[int]
) -> RainbowPath:
    avail = [masks[order[i]][order[i + 1]] for i in range(len(order) - 1)]
    colors = perfect_matching(avail)
    assert colors is not None
    return RainbowPath(vertices=tuple(order), colors=tuple(colors))


def _finish_cycle(
    tc: TournamentCollection, masks, order: Sequence[int]
) -> RainbowCycle:
    n = len(order)
    avail = [masks[order[i]][order[(i + 1) % n]] for i in range(n)]
    colors = perfect_matching(avail)
    assert colors is not None
    return RainbowCycle(vertices=tuple(order), colors=tuple(colors))


def exact_transversal_ham_path(
    tc: TournamentCollection,
    budget: Optional[SearchBudget] = None,
    start: Optional[int] = None,
    end: Optional[int] = None,
    use_matching_prune: bool = True,
) -> OracleOutcome:
    """Backtracking search for a transversal Hamilton path.

    NotExists is only reported when the search space was exhausted within
    budget.  With use_matching_prune=False the search checks color
    feasibility only at the leaves, which is much slower but shares no
    pruning logic (useful for cross-validation).
    """
    budget = budget or SearchBudget()
    budget.start()
    t0 = time.perf_counter()
    if tc.m < tc.n - 1:
        return OracleOutcome(
            NOT_EXISTS,
            nodes_expanded=0,
            millis=(time.perf_counter() - t0) * 1e3,
            notes="fewer colors than arcs needed",
        )
    if not use_matching_prune:
        return _path_leaf_checked(tc, budget, start, end, t0)
    try:
        status, wit = _search_path(tc, budget, start, end, True)
    except _BudgetExceeded:
        status, wit = BUDGET_EXHAUSTED, None
    return OracleOutcome(
        status, wit, budget.nodes, (time.perf_counter() - t0) * 1e3
    )


def _path_leaf_checked(tc, budget, start, end, t0) -> OracleOutcome:
    masks = _arc_masks(tc)
    n = tc.n

    def walk(order: list[int], used: int) -> Optional[RainbowPath]:
        if len(order) == n:
            avail = [masks[order[i]][order[i + 1]] for i in range(n - 1)]
            colors = perfect_matching(avail)
            if colors is not None:
                return RainbowPath(vertices=tuple(order), colors=tuple(colors))
            return None
        budget.tick()
        last = order[-1]
        for v in range(n):
            if (used >> v) & 1 or not masks[last][v]:
                continue
            if end is not None and v == end and len(order) != n - 1:
                continue
            got = walk(order + [v], used | (1 << v))
            if got is not None:
                return got
        return None

    try:
        for s in [start] if start is not None else range(n):
            budget.tick()
            got = walk([s], 1 << s)
            if got is not None:
                return OracleOutcome(
                    FOUND, got, budget.nodes, (time.perf_counter() - t0) * 1e3
                )
    except _BudgetExceeded:
        return OracleOutcome(
            BUDGET_EXHAUSTED, None, budget.nodes,
            (time.perf_counter() - t0) * 1e3,
        )
    return OracleOutcome(
        NOT_EXISTS, None, budget.nodes, (time.perf_counter() - t0) * 1e3
    )


def exact_transversal_ham_cycle(
    tc: TournamentCollection,
    budget: Optional[SearchBudget] = None,
) -> OracleOutcome:
    """Backtracking search for a transversal Hamilton cycle.

    The cycle is anchored at vertex 0, which removes rotational symmetry.
    """
    budget = budget or SearchBudget()
    budget.start()
    t0 = time.perf_counter()
    n = tc.n
    if tc.m < n:
        return OracleOutcome(
            NOT_EXISTS, nodes_expanded=0,
            millis=(time.perf_counter() - t0) * 1e3,
            notes="fewer colors than arcs needed",
        )
    if n < 3:
        return OracleOutcome(
            NOT_EXISTS, nodes_expanded=0,
            millis=(time.perf_counter() - t0) * 1e3,
            notes="cycles need at least 3 vertices",
        )
    masks = _arc_masks(tc)
    matcher = IncrementalMatcher()
    order = [0]
    used = 1

    def extend() -> Optional[list[int]]:
        nonlocal used
        budget.tick()
        last = order[-1]
        if len(order) == n:
            back = masks[last][0]
            if back and matcher.push(back):
                matcher.pop()
                return list(order)
            return None
        for v in range(1, n):
            if (used >> v) & 1:
                continue
            mask = masks[last][v]
            if not mask or not matcher.push(mask):
                continue
            order.append(v)
            used |= 1 << v
            got = extend()
            order.pop()
            used ^= 1 << v
            matcher.pop()
            if got is not None:
                return got
        return None

    try:
        got = extend()
    except _BudgetExceeded:
        return OracleOutcome(
            BUDGET_EXHAUSTED, None, budget.nodes,
            (time.perf_counter() - t0) * 1e3,
        )
    if got is None:
        return OracleOutcome(
            NOT_EXISTS, None, budget.nodes, (time.perf_counter() - t0) * 1e3
        )
    return OracleOutcome(
        FOUND, _finish_cycle(tc, masks, got), budget.nodes,
        (time.perf_counter() - t0) * 1e3,
    )


def exact_transversal_ham_path_perm(
    tc: TournamentCollection, budget: Optional[SearchBudget] = None
) -> OracleOutcome:
    """Permutation-enumeration oracle; independent of the fast search."""
    budget = budget or SearchBudget()
    budget.start()
    t0 = time.perf_counter()
    n = tc.n
    if tc.m < n - 1:
        return OracleOutcome(
            NOT_EXISTS, nodes_expanded=0,
            millis=(time.perf_counter() - t0) * 1e3,
            notes="fewer colors than arcs needed",
        )
    masks = _arc_masks(tc)
    try:
        for perm in itertools.permutations(range(n)):
            budget.tick()
            avail = []
            ok = True
            for i in range(n - 1):
                mask = masks[perm[i]][perm[i + 1]]
                if not mask:
                    ok = False
                    break
                avail.append(mask)
            if not ok:
                continue
            colors = perfect_matching(avail)
            if colors is not None:
                wit = RainbowPath(vertices=tuple(perm), colors=tuple(colors))
                return OracleOutcome(
                    FOUND, wit, budget.nodes,
                    (time.perf_counter() - t0) * 1e3,
                )
    except _BudgetExceeded:
        return OracleOutcome(
            BUDGET_EXHAUSTED, None, budget.nodes,
            (time.perf_counter() - t0) * 1e3,
        )
    return OracleOutcome(
        NOT_EXISTS, None, budget.nodes, (time.perf_counter() - t0) * 1e3
    )


def exact_transversal_ham_cycle_perm(
    tc: TournamentCollection, budget: Optional[SearchBudget] = None
) -> OracleOutcome:
    """Permutation-enumeration cycle oracle, anchored at vertex 0."""
    budget = budget or SearchBudget()
    budget.start()
    t0 = time.perf_counter()
    n = tc.n
    if n < 3 or tc.m < n:
        return OracleOutcome(
            NOT_EXISTS, nodes_expanded=0,
            millis=(time.perf_counter() - t0) * 1e3,
            notes="too few vertices or colors",
        )
    masks = _arc_masks(tc)
    try:
        for rest in itertools.permutations(range(1, n)):
            budget.tick()
            perm = (0,) + rest
            avail = []
            ok = True
            for i in range(n):
                mask = masks[perm[i]][perm[(i + 1) % n]]
                if not mask:
                    ok = False
                    break
                avail.append(mask)
            if not ok:
                continue
            colors = perfect_matching(avail)
            if colors is not None:
                wit = RainbowCycle(vertices=perm, colors=tuple(colors))
                return OracleOutcome(
                    FOUND, wit, budget.nodes,
                    (time.perf_counter() - t0) * 1e3,
                )
    except _BudgetExceeded:
        return OracleOutcome(
            BUDGET_EXHAUSTED, None, budget.nodes,
            (time.perf_counter() - t0) * 1e3,
        )
    return OracleOutcome(
        NOT_EXISTS, None, budget.nodes, (time.perf_counter() - t0) * 1e3
    )


def count_transversal_ham_paths(tc: TournamentCollection) -> int:
    """Number of (vertex sequence, color assignment) Hamilton path pairs.

    Debug helper; capped at n <= 7 because the count is over all
    permutations times all matchings.
    """
    n = tc.n
    if n > 7:
        raise ValueError("counting is capped at n <= 7")
    masks = _arc_masks(tc)
    total = 0
    for perm in itertools.permutations(range(n)):
        avail = []
        ok = True
        for i in range(n - 1):
            mask = masks[perm[i]][perm[i + 1]]
            if not mask:
                ok = False
                break
            avail.append(mask)
        if not ok:
            continue
        total += _count_matchings(avail, 0, 0)
    return total


def _count_matchings(avail: list[int], i: int, used: int) -> int:
    if i == len(avail):
        return 1
    total = 0
    free = avail[i] & ~used
    while free:
        low = free & -free
        free ^= low
        total += _count_matchings(avail, i + 1, used | low)
    return total


def exact_rainbow_path(
    cd: ColoredDigraph,
    start: int,
    end: int,
    budget: Optional[SearchBudget] = None,
) -> OracleOutcome:
    """Rainbow (all colors distinct) path from start to end in a colored
    digraph.  Vertices need not all be visited."""
    budget = budget or SearchBudget()
    budget.start()
    t0 = time.perf_counter()
    out: dict[int, list[tuple[int, int]]] = {}
    for u, v, c in cd.arcs:
        out.setdefault(u, []).append((v, c))

    path = [start]
    colors: list[int] = []
    seen = {start}
    used_colors: set[int] = set()

    def dfs(u: int) -> bool:
        budget.tick()
        if u == end:
            return True
        for v, c in out.get(u, ()):
            if v in seen or c in used_colors:
                continue
            seen.add(v)
            used_colors.add(c)
            path.append(v)
            colors.append(c)
            if dfs(v):
                return True
            path.pop()
            colors.pop()
            seen.discard(v)
            used_colors.discard(c)
        return False

    try:
        found = dfs(start)
    except _BudgetExceeded:
        return OracleOutcome(
            BUDGET_EXHAUSTED, None, budget.nodes,
            (time.perf_counter() - t0) * 1e3,
        )
    if not found:
        return OracleOutcome(
            NOT_EXISTS, None, budget.nodes, (time.perf_counter() - t0) * 1e3
        )
    wit = RainbowPath(vertices=tuple(path), colors=tuple(colors))
    return OracleOutcome(
        FOUND, wit, budget.nodes, (time.perf_counter() - t0) * 1e3
    )


def is_strongly_rainbow_connected(cd: ColoredDigraph, n: int) -> bool:
    """True when every ordered vertex pair is joined by a rainbow path."""
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if not exact_rainbow_path(cd, x, y).found:
                return False
    return True
