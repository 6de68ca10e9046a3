"""End-to-end transversal Hamilton path and cycle solvers.

The constructive branch mirrors the four-step assembly (separator color
reservation, absorber setup, per-block paths, forced top-up block) plus the
cycle-closing case analysis; every dead end is a first-class outcome that
falls back to the exact oracle under a node budget.  Deterministic given
(instance, params).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import oracle
from .constructive import (
    HPartition,
    absorb,
    build_absorber,
    h_partition,
    rainbow_ham_path_one_spare,
    restrict_colors,
    tournament_ham_path,
)
from .core import (
    RainbowCycle,
    RainbowPath,
    Tournament,
    TournamentCollection,
    induced_collection,
    is_strongly_connected,
    majority_subtournament,
)
from .errors import StageFailure
from .matching import matching_with_forced_colors, perfect_matching
from .oracle import (
    BUDGET_EXHAUSTED,
    FOUND,
    NOT_EXISTS,
    OracleOutcome,
    SearchBudget,
)

__all__ = [
    "PipelineParams",
    "ColorLedger",
    "CycleSearchState",
    "rainbow_dhp",
    "transversal_ham_path",
    "transversal_ham_cycle",
    "exchange_step",
]


@dataclass(frozen=True)
class PipelineParams:
    """Runtime constants for the constructive branch.

    The hierarchy mu < gamma < beta < alpha <= 1/2 is enforced; the values
    are configuration, not constants derived from an asymptotic proof.
    """

    mu: float = 0.01
    gamma: float = 0.05
    beta: float = 0.1
    alpha: float = 0.25
    seed: int = 0
    oracle_fallback_n: int = 9
    absorber_retries: int = 20
    dhp_retries: int = 8
    fallback_budget_nodes: int = 200_000

    def __post_init__(self):
        if not (0 < self.mu < self.gamma < self.beta < self.alpha <= 0.5):
            raise ValueError("need 0 < mu < gamma < beta < alpha <= 1/2")


@dataclass
class ColorLedger:
    """Tracks the color partition through the four assembly steps."""

    D: list[int] = field(default_factory=list)
    A: list[int] = field(default_factory=list)
    C: list[int] = field(default_factory=list)
    B: list[int] = field(default_factory=list)
    used: set[int] = field(default_factory=set)
    B_star: list[int] = field(default_factory=list)
    C_star: list[int] = field(default_factory=list)
    D_star: list[int] = field(default_factory=list)

    def snapshot(self) -> dict:
        return {
            "D": len(self.D), "A": len(self.A), "C": len(self.C),
            "B": len(self.B), "used": len(self.used),
            "B_star": len(self.B_star), "C_star": len(self.C_star),
            "D_star": len(self.D_star),
        }

    def spend(self, colors) -> None:
        for c in colors:
            if c in self.used:
                raise StageFailure("ledger", f"color {c} spent twice")
            self.used.add(c)


@dataclass
class CycleSearchState:
    """Anchors and vertex sets for the longest-rainbow-path machine."""

    P: Optional[RainbowPath] = None
    D_unused: set[int] = field(default_factory=set)
    S_plus: set[int] = field(default_factory=set)
    S_minus: set[int] = field(default_factory=set)
    x: Optional[int] = None
    y: Optional[int] = None

    def refresh(self, tc: TournamentCollection) -> None:
        """Recompute S+/S- from the current path and unused colors."""
        self.S_plus = set()
        self.S_minus = set()
        if self.P is None or not self.D_unused:
            return
        head = self.P.vertices[0]
        tail = self.P.vertices[-1]
        on_path = set(self.P.vertices)
        for z in range(tc.n):
            if z in on_path:
                continue
            if all(tc.tournaments[i].has_arc(z, head) for i in self.D_unused):
                self.S_plus.add(z)
            if all(tc.tournaments[i].has_arc(tail, z) for i in self.D_unused):
                self.S_minus.add(z)


def _trace(trace: Optional[list], stage: str, **info) -> None:
    if trace is not None:
        trace.append({"stage": stage, **info})


def _block_cap(n: int, params: PipelineParams) -> int:
    """Effective block-size cap: the asymptotic mu*n is useless at desk
    scale, so it is floored by 24 and ~3*sqrt(n)."""
    return max(24, math.ceil(params.mu * n), math.ceil(3 * math.sqrt(n)))


def _greedy_color(
    tc: TournamentCollection, u: int, v: int, used: set[int]
) -> int:
    for c in range(tc.m):
        if c not in used and tc.tournaments[c].has_arc(u, v):
            return c
    raise StageFailure("greedy-color", f"no unused color has arc {u}->{v}")


# ---------------------------------------------------------------------------
# the four-step endpoint-to-endpoint assembly


def rainbow_dhp(
    tc: TournamentCollection,
    tmaj: Tournament,
    partition: HPartition,
    w0: int,
    wr: int,
    params: PipelineParams,
    seed: int = 0,
    trace: Optional[list] = None,
) -> RainbowPath:
    """Rainbow Hamilton path from w0 to wr using every color exactly once.

    Expects m = n - 1 where n counts the partitioned vertices plus the two
    endpoints; w0 must dominate the first block and the last block must
    dominate wr in tmaj.  Raises StageFailure on any dead end; the caller
    owns retries and oracle fallback.
    """
    n, m = tc.n, tc.m
    if m != n - 1:
        raise StageFailure("dhp-pre", f"expected m = n-1, got n={n} m={m}")
    blocks = [list(b) for b in partition.blocks]
    seps = list(partition.separators)
    r = len(blocks)
    if r < 2:
        raise StageFailure("dhp-pre", "need at least two blocks")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed])))
    ledger = ColorLedger()

    # step 1: reserve separator colors D and fix the block roles
    tau = max(range(r), key=lambda i: len(blocks[i]))
    others = [i for i in range(r) if i != tau]
    beta_target = params.beta * n
    l1: list[int] = []
    esum = 0
    for i in others:
        l1.append(i)
        esum += len(blocks[i]) - 1
        if esum >= beta_target:
            break
    l2 = [i for i in others if i not in l1]

    d_size = max(4, 2 * r + 2)
    n_dcolored = 2 * r - 2
    forced_extra = len(l2) + (d_size - n_dcolored)
    if len(blocks[tau]) + 1 < forced_extra + 2:
        raise StageFailure(
            "dhp-step1",
            "top-up block too small for the forced colors it must host",
        )
    perm = rng.permutation(m)
    D = sorted(int(c) for c in perm[:d_size])
    ledger.D = D
    dmask = 0
    for c in D:
        dmask |= 1 << c

    # (P2)-style fast check: every candidate separator-incident arc should
    # see more than 2r colors of D; at this scale it rarely holds, so its
    # outcome is recorded and the later matching is the actual guarantee
    p2_ok = _p2_check(tc, blocks, seps, w0, wr, tau, D, r)
    _trace(trace, "step1", D=len(D), r=r, tau=tau, l1=l1, l2=l2, p2=p2_ok)

    # step 2: spanning paths for the absorber blocks, then the absorber
    q1_paths = {
        i: tournament_ham_path(tmaj, blocks[i], rng=rng) for i in l1
    }
    q1_arcs = [
        (p[k], p[k + 1])
        for i in l1
        for k, p in ((k, q1_paths[i]) for k in range(len(q1_paths[i]) - 1))
    ]
    e_q1 = len(q1_arcs)
    c_used4 = len(blocks[tau]) + 1 - forced_extra
    ell = min(6, e_q1, max(1, c_used4))
    c_size = ell + c_used4
    pool = [c for c in range(m) if not (dmask >> c) & 1]
    absorber = build_absorber(
        tc, q1_arcs, pool, ell, c_size,
        retries=params.absorber_retries, seed=seed,
    )
    ledger.A = list(absorber.A)
    ledger.C = list(absorber.C)
    in_ac = set(absorber.A) | set(absorber.C)
    B = [c for c in pool if c not in in_ac]
    ledger.B = B
    if len(B) != sum(len(blocks[i]) for i in l2):
        raise StageFailure(
            "dhp-step2",
            f"B has {len(B)} colors but the plain blocks need "
            f"{sum(len(blocks[i]) for i in l2)}",
        )
    _trace(trace, "step2", **ledger.snapshot(), e_q1=e_q1, ell=ell)

    # step 3: one-spare paths on the plain blocks over disjoint budgets
    block_paths: dict[int, RainbowPath] = {}
    b_at = 0
    for i in l2:
        w = blocks[i]
        budget = B[b_at:b_at + len(w)]
        b_at += len(w)
        sub, o2n = induced_collection(tc, sorted(w))
        n2o = {b2: a for a, b2 in o2n.items()}
        subr = restrict_colors(sub, budget)
        p = rainbow_ham_path_one_spare(
            subr,
            vertex_order=list(rng.permutation(len(w))),
            color_order=list(rng.permutation(len(budget))),
        )
        cols = tuple(budget[c] for c in p.colors)
        block_paths[i] = RainbowPath(
            vertices=tuple(n2o[x] for x in p.vertices), colors=cols
        )
        ledger.spend(cols)
        ledger.B_star.extend(c for c in budget if c not in cols)
    for i in l1:
        block_paths[i] = RainbowPath(
            vertices=tuple(q1_paths[i]),
            colors=tuple(range(-1, -len(q1_paths[i]), -1)),  # placeholder
        )

    # reserved-color matching for the separator arcs (both sides of the
    # top-up block are excluded; they belong to step 4)
    spots: list[tuple[int, int]] = []
    for i in range(r):
        if i == tau:
            continue
        left = w0 if i == 0 else seps[i - 1]
        right = wr if i == r - 1 else seps[i]
        spots.append((left, block_paths[i].vertices[0]))
        spots.append((block_paths[i].vertices[-1], right))
    avail = [tc.arc_color_mask(u, v) & dmask for (u, v) in spots]
    got = perfect_matching(avail)
    if got is None:
        raise StageFailure("dhp-step3", "reserved colors cannot cover the "
                           "separator arcs")
    sep_color = {spots[k]: got[k] for k in range(len(spots))}
    ledger.spend(got)
    ledger.D_star = [c for c in D if c not in got]
    _trace(trace, "step3", **ledger.snapshot())

    # step 4: force the stragglers through the top-up block, then absorb
    forced = sorted(set(ledger.B_star) | set(ledger.D_star))
    a_left = w0 if tau == 0 else seps[tau - 1]
    a_right = wr if tau == r - 1 else seps[tau]
    fc_mask = 0
    for c in forced + list(absorber.C):
        fc_mask |= 1 << c
    tau_path = None
    tau_cols = None
    for _ in range(40):
        cand = tournament_ham_path(tmaj, blocks[tau], rng=rng)
        arcs = (
            [(a_left, cand[0])]
            + [(cand[k], cand[k + 1]) for k in range(len(cand) - 1)]
            + [(cand[-1], a_right)]
        )
        masks = [tc.arc_color_mask(u, v) & fc_mask for (u, v) in arcs]
        res = matching_with_forced_colors(masks, forced)
        if res is not None:
            tau_path, tau_cols = cand, res
            break
    if tau_path is None:
        raise StageFailure("dhp-step4", "no top-up block path accepts all "
                           "straggler colors")
    ledger.spend(tau_cols)
    c_star = [c for c in absorber.C if c not in ledger.used]
    ledger.C_star = c_star
    if len(c_star) != ell:
        raise StageFailure(
            "dhp-step4", f"absorption needs {ell} leftovers, found {len(c_star)}"
        )
    colored_q1 = absorb(absorber, c_star)
    q1_color = {(u, v): c for (u, v, c) in colored_q1.arcs}
    ledger.spend(q1_color.values())
    _trace(trace, "step4", **ledger.snapshot())

    # assemble, block by block
    verts = [w0]
    cols: list[int] = []
    for i in range(r):
        left = w0 if i == 0 else seps[i - 1]
        if i == tau:
            cols.append(tau_cols[0])
            verts.extend(tau_path)
            cols.extend(tau_cols[1:])
            if i < r - 1:
                verts.append(seps[i])
            continue
        bp = block_paths[i]
        cols.append(sep_color[(left, bp.vertices[0])])
        verts.extend(bp.vertices)
        if i in l1:
            cols.extend(
                q1_color[(bp.vertices[k], bp.vertices[k + 1])]
                for k in range(len(bp.vertices) - 1)
            )
        else:
            cols.extend(bp.colors)
        right = wr if i == r - 1 else seps[i]
        cols.append(sep_color[(bp.vertices[-1], right)])
        if i < r - 1:
            verts.append(seps[i])
    verts.append(wr)
    out = RainbowPath(vertices=tuple(verts), colors=tuple(cols))
    if len(out.vertices) != n or set(out.colors) != set(range(m)):
        raise StageFailure("dhp-assemble", "color accounting failed")
    if not out.valid(tc):
        raise StageFailure("dhp-assemble", "assembled path is not transversal")
    return out


def _p2_check(tc, blocks, seps, w0, wr, tau, D, r) -> bool:
    dmask = 0
    for c in D:
        dmask |= 1 << c
    need = 2 * r
    for i, blk in enumerate(blocks):
        if i == tau:
            continue
        left = w0 if i == 0 else seps[i - 1]
        right = wr if i == len(blocks) - 1 else seps[i]
        for v in blk:
            if bin(tc.arc_color_mask(left, v) & dmask).count("1") <= need:
                return False
            if bin(tc.arc_color_mask(v, right) & dmask).count("1") <= need:
                return False
    return True


# ---------------------------------------------------------------------------
# full path solver


def _partition_for(tc: TournamentCollection, params: PipelineParams):
    tmaj = majority_subtournament(tc)
    ell = _block_cap(tc.n, params)
    gamma = Fraction(params.gamma).limit_denominator(1000)
    gamma = min(gamma, Fraction(1, 6))
    hp = h_partition(tmaj, ell, gamma)
    return tmaj, hp


def _middle_instance(tc, tmaj, hp, used: set[int]):
    """Induce the sub-instance between the outer blocks; returns everything
    rainbow_dhp needs, in local labels, plus the back-mapping."""
    blocks = [list(b) for b in hp.blocks]
    seps = list(hp.separators)
    w0, wr = seps[0], seps[-1]
    middle_blocks = blocks[1:-1]
    mid_seps = seps[1:-1]
    vset = sorted(
        {w0, wr}.union(*[set(b) for b in middle_blocks], set(mid_seps))
    )
    sub, o2n = induced_collection(tc, vset)
    n2o = {b: a for a, b in o2n.items()}
    free = [c for c in range(tc.m) if c not in used]
    subr = restrict_colors(sub, free)
    tmaj_sub = tmaj.restrict(vset)
    part = HPartition(
        tuple(tuple(o2n[v] for v in b) for b in middle_blocks),
        tuple(o2n[s] for s in mid_seps),
        hp.ell,
        hp.gamma,
    )
    return subr, tmaj_sub, part, o2n, n2o, free, w0, wr


def _constructive_path(
    tc: TournamentCollection,
    params: PipelineParams,
    seed: int,
    trace: Optional[list],
) -> RainbowPath:
    """One attempt of the partition + four-step assembly, free endpoints."""
    tmaj, hp = _partition_for(tc, params)
    blocks = [list(b) for b in hp.blocks]
    if len(blocks) < 4:
        raise StageFailure("path-pre", "too few blocks for the assembly")
    seps = list(hp.separators)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 1])))

    used: set[int] = set()
    p0 = tournament_ham_path(tmaj, blocks[0], rng=rng)
    pl = tournament_ham_path(tmaj, blocks[-1], rng=rng)
    head_cols = []
    for k in range(len(p0) - 1):
        c = _greedy_color(tc, p0[k], p0[k + 1], used)
        used.add(c)
        head_cols.append(c)
    c = _greedy_color(tc, p0[-1], seps[0], used)
    used.add(c)
    head_cols.append(c)
    tail_cols = []
    c = _greedy_color(tc, seps[-1], pl[0], used)
    used.add(c)
    tail_cols.append(c)
    for k in range(len(pl) - 1):
        c = _greedy_color(tc, pl[k], pl[k + 1], used)
        used.add(c)
        tail_cols.append(c)
    _trace(trace, "outer", outer_colors=len(used))

    subr, tmaj_sub, part, o2n, n2o, free, w0, wr = _middle_instance(
        tc, tmaj, hp, used
    )
    mid = rainbow_dhp(
        subr, tmaj_sub, part, o2n[w0], o2n[wr], params,
        seed=seed, trace=trace,
    )
    verts = p0 + [n2o[v] for v in mid.vertices] + pl
    cols = head_cols + [free[c] for c in mid.colors] + tail_cols
    return RainbowPath(vertices=tuple(verts), colors=tuple(cols))


def transversal_ham_path(
    tc: TournamentCollection,
    params: Optional[PipelineParams] = None,
    budget: Optional[SearchBudget] = None,
    mode: str = "auto",
    trace: Optional[list] = None,
) -> OracleOutcome:
    """Transversal Hamilton path: constructive assembly with oracle fallback.

    mode is "auto" (constructive above the fallback threshold, oracle
    below), "constructive", or "exact".  NotExists can only come from the
    exhaustive oracle.
    """
    params = params or PipelineParams()
    t0 = time.perf_counter()
    n = tc.n
    if tc.m < n - 1:
        return OracleOutcome(
            NOT_EXISTS, millis=(time.perf_counter() - t0) * 1e3,
            notes="fewer colors than arcs needed",
        )
    work = tc
    if tc.m > n - 1:
        work = restrict_colors(tc, list(range(n - 1)))
        _trace(trace, "reduce", kept_colors=n - 1)
    if mode == "exact" or (mode == "auto" and n <= params.oracle_fallback_n):
        return oracle.exact_transversal_ham_path(work, budget)
    for attempt in range(params.dhp_retries):
        try:
            p = _constructive_path(
                work, params, seed=params.seed + attempt, trace=trace
            )
            return OracleOutcome(
                FOUND, p, millis=(time.perf_counter() - t0) * 1e3,
                notes=f"constructive, attempt {attempt}",
            )
        except StageFailure as exc:
            _trace(trace, "attempt-failed", attempt=attempt, error=str(exc))
    if mode == "constructive":
        return OracleOutcome(
            BUDGET_EXHAUSTED, millis=(time.perf_counter() - t0) * 1e3,
            notes="constructive attempts exhausted",
        )
    budget = budget or SearchBudget(max_nodes=params.fallback_budget_nodes)
    out = oracle.exact_transversal_ham_path(work, budget)
    out.notes = (out.notes + "; " if out.notes else "") + "oracle fallback"
    return out


# ---------------------------------------------------------------------------
# exchange step and the cycle solver


def exchange_step(
    p: RainbowPath, unused: set[int], tc: TournamentCollection
) -> Optional[RainbowPath]:
    """Extend a rainbow path by one vertex using two unused colors.

    Returns None only when the path is already Hamilton; with two spare
    colors an uncovered vertex can always be prepended, spliced, or
    appended.
    """
    if len(p.vertices) == tc.n:
        return None
    if len(unused) < 2:
        raise ValueError("exchange needs at least two unused colors")
    c1, c2 = sorted(unused)[:2]
    on_path = set(p.vertices)
    v = next(z for z in range(tc.n) if z not in on_path)
    path = list(p.vertices)
    colors = list(p.colors)
    t1, t2 = tc.tournaments[c1], tc.tournaments[c2]
    if t1.has_arc(v, path[0]):
        return RainbowPath((v, *path), (c1, *colors))
    if t2.has_arc(v, path[0]):
        return RainbowPath((v, *path), (c2, *colors))
    for t in range(1, len(path)):
        hit = c1 if t1.has_arc(v, path[t]) else (
            c2 if t2.has_arc(v, path[t]) else None
        )
        if hit is None:
            continue
        other = c2 if hit == c1 else c1
        newv = path[:t] + [v] + path[t:]
        newc = colors[:t - 1] + [other, hit] + colors[t:]
        return RainbowPath(tuple(newv), tuple(newc))
    return RainbowPath((*path, v), (*colors, c1))


def _close_from_ham_path(
    tc: TournamentCollection, p: RainbowPath
) -> Optional[RainbowCycle]:
    """Try to close a rainbow Hamilton path into a cycle by recoloring.

    The path uses n-1 of the n colors.  For every color c whose tournament
    has the closing arc, check whether the path arcs can be rainbow-colored
    avoiding c; any success closes the cycle with c.
    """
    n = tc.n
    tail, head = p.vertices[-1], p.vertices[0]
    masks = [
        tc.arc_color_mask(p.vertices[k], p.vertices[k + 1])
        for k in range(n - 1)
    ]
    for c in range(tc.m):
        if not tc.tournaments[c].has_arc(tail, head):
            continue
        got = perfect_matching([mk & ~(1 << c) for mk in masks])
        if got is not None:
            return RainbowCycle(vertices=p.vertices, colors=(*got, c))
    return None


def _case3_machine(
    tc: TournamentCollection,
    params: PipelineParams,
    seed: int,
    trace: Optional[list],
    restarts: int = 24,
) -> Optional[RainbowCycle]:
    """Exchange-saturated rainbow Hamilton paths with recolored closings.

    Grows paths with exchange_step until Hamilton, then attempts to free a
    closing color by rematching path arcs; restarts vary the growth order.
    """
    n = tc.n
    state = CycleSearchState()
    for k in range(restarts):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([seed, 7, k]))
        )
        vorder = list(rng.permutation(n))
        p = RainbowPath((vorder[0],), ())
        while len(p.vertices) < n:
            unused = set(range(tc.m)) - set(p.colors)
            state.P, state.D_unused = p, unused
            state.refresh(tc)
            nxt = exchange_step(p, unused, tc)
            if nxt is None:
                break
            p = nxt
        if len(p.vertices) < n:
            continue
        state.P = p
        state.x, state.y = p.vertices[0], p.vertices[-1]
        cyc = _close_from_ham_path(tc, p)
        if cyc is not None:
            _trace(trace, "case3", restarts_used=k + 1)
            return cyc
    _trace(trace, "case3", restarts_used=restarts, closed=False)
    return None


def _constructive_cycle(
    tc: TournamentCollection,
    params: PipelineParams,
    seed: int,
    trace: Optional[list],
) -> RainbowCycle:
    """Partition, outer arc from y back to x, inner assembly in between."""
    n = tc.n
    tmaj, hp = _partition_for(tc, params)
    blocks = [list(b) for b in hp.blocks]
    if len(blocks) < 4:
        raise StageFailure("cycle-pre", "too few blocks for the assembly")
    seps = list(hp.separators)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 2])))

    # outer piece runs w_r -> W_{r+1} -> (y -> ... -> x) -> W_0 -> w_0;
    # regenerating the outer spanning paths varies the anchors x and y
    for _ in range(30):
        pl = tournament_ham_path(tmaj, blocks[-1], rng=rng)
        p0 = tournament_ham_path(tmaj, blocks[0], rng=rng)
        y, x = pl[-1], p0[0]
        close = [
            c for c in range(tc.m) if tc.tournaments[c].has_arc(y, x)
        ]
        if close:
            used: set[int] = set()
            outer_verts = pl + p0
            outer_cols: list[int] = []
            used.add(close[0])
            for k in range(len(outer_verts) - 1):
                u2, v2 = outer_verts[k], outer_verts[k + 1]
                c = close[0] if (u2, v2) == (y, x) else _greedy_color(
                    tc, u2, v2, used
                )
                used.add(c)
                outer_cols.append(c)
            c_in = _greedy_color(tc, seps[-1], pl[0], used)
            used.add(c_in)
            c_out = _greedy_color(tc, p0[-1], seps[0], used)
            used.add(c_out)
            _trace(trace, "cycle-outer", case=1, outer=len(used))

            subr, tmaj_sub, part, o2n, n2o, free, w0, wr = _middle_instance(
                tc, tmaj, hp, used
            )
            mid = rainbow_dhp(
                subr, tmaj_sub, part, o2n[w0], o2n[wr], params,
                seed=seed, trace=trace,
            )
            verts = (
                [n2o[v] for v in mid.vertices] + [pl[0]] + outer_verts[1:]
            )
            cols = (
                [free[c] for c in mid.colors] + [c_in] + outer_cols + [c_out]
            )
            # verts currently w0..wr then pl then p0; close p0[-1] -> w0
            return RainbowCycle(vertices=tuple(verts), colors=tuple(cols))
    raise StageFailure("cycle-case1", "no closing arc found for any anchors")


def transversal_ham_cycle(
    tc: TournamentCollection,
    params: Optional[PipelineParams] = None,
    budget: Optional[SearchBudget] = None,
    mode: str = "auto",
    trace: Optional[list] = None,
) -> OracleOutcome:
    """Transversal Hamilton cycle solver with the cycle-closing cases.

    Requires m = n (larger m is reduced by restriction).  At least n-1
    strongly connected members are expected; a violation is reported in the
    outcome notes while the search still runs.  NotExists only comes from
    the exhaustive oracle.
    """
    params = params or PipelineParams()
    t0 = time.perf_counter()
    n = tc.n
    notes = []
    if tc.m < n or n < 3:
        return OracleOutcome(
            NOT_EXISTS, millis=(time.perf_counter() - t0) * 1e3,
            notes="too few colors or vertices",
        )
    work = tc
    if tc.m > n:
        work = restrict_colors(tc, list(range(n)))
        _trace(trace, "reduce", kept_colors=n)
    n_strong = sum(
        1 for t in work.tournaments if is_strongly_connected(t)
    )
    if n_strong < n - 1:
        notes.append(
            f"precondition unmet: only {n_strong} of {n} tournaments "
            "strongly connected"
        )
    if mode == "exact" or (mode == "auto" and n <= params.oracle_fallback_n):
        out = oracle.exact_transversal_ham_cycle(work, budget)
        if notes:
            out.notes = "; ".join(notes + ([out.notes] if out.notes else []))
        return out
    for attempt in range(params.dhp_retries):
        try:
            cyc = _constructive_cycle(
                work, params, seed=params.seed + attempt, trace=trace
            )
            if not cyc.valid(work) or len(cyc.vertices) != n:
                raise StageFailure("cycle-assemble", "invalid witness")
            return OracleOutcome(
                FOUND, cyc, millis=(time.perf_counter() - t0) * 1e3,
                notes="; ".join(notes + [f"constructive, attempt {attempt}"]),
            )
        except StageFailure as exc:
            _trace(trace, "attempt-failed", attempt=attempt, error=str(exc))
    cyc = _case3_machine(tc=work, params=params, seed=params.seed, trace=trace)
    if cyc is not None and cyc.valid(work):
        return OracleOutcome(
            FOUND, cyc, millis=(time.perf_counter() - t0) * 1e3,
            notes="; ".join(notes + ["longest-path machine"]),
        )
    if mode == "constructive":
        return OracleOutcome(
            BUDGET_EXHAUSTED, millis=(time.perf_counter() - t0) * 1e3,
            notes="; ".join(notes + ["constructive attempts exhausted"]),
        )
    budget = budget or SearchBudget(max_nodes=params.fallback_budget_nodes)
    out = oracle.exact_transversal_ham_cycle(work, budget)
    out.notes = "; ".join(
        notes + ([out.notes] if out.notes else []) + ["oracle fallback"]
    )
    return out
