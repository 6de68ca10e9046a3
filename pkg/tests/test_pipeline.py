"""End-to-end solvers: constructive pipeline, exchange step, cycle closing."""

import pytest

from rainbow_tournaments import generators, oracle, pipeline
from rainbow_tournaments.core import RainbowPath
from rainbow_tournaments.oracle import (
    BUDGET_EXHAUSTED,
    FOUND,
    NOT_EXISTS,
    SearchBudget,
)
from rainbow_tournaments.pipeline import (
    PipelineParams,
    exchange_step,
    transversal_ham_cycle,
    transversal_ham_path,
)


class TestParams:
    def test_defaults_are_ordered(self):
        p = PipelineParams()
        assert 0 < p.mu < p.gamma < p.beta < p.alpha <= 0.5

    def test_bad_ordering_rejected(self):
        with pytest.raises(ValueError):
            PipelineParams(mu=0.2, gamma=0.1)


class TestPathSolver:
    def test_too_few_colors(self):
        tc = generators.random_collection(6, 3, seed=0)
        out = transversal_ham_path(tc)
        assert out.status == NOT_EXISTS

    def test_small_delegates_to_oracle(self):
        for seed in range(50):
            tc = generators.random_collection(6, 5, seed=seed)
            out = transversal_ham_path(tc)
            ref = oracle.exact_transversal_ham_path(tc)
            assert out.status == ref.status
            if out.found:
                assert out.witness.is_hamilton(tc)

    def test_extra_colors_reduced(self):
        tc = generators.random_collection(6, 9, seed=1)
        out = transversal_ham_path(tc)
        if out.found:
            assert set(out.witness.colors) <= set(range(5))

    def test_counterexample_not_exists(self):
        path_inst, _ = generators.fig1_counterexamples()
        out = transversal_ham_path(path_inst)
        assert out.status == NOT_EXISTS

    def test_constructive_at_moderate_size(self):
        tc = generators.random_collection(80, 79, seed=11)
        trace = []
        out = transversal_ham_path(tc, mode="constructive", trace=trace)
        assert out.status == FOUND
        assert out.witness.is_hamilton(tc)
        assert any(ev.get("stage") == "reduce" or ev for ev in trace)

    def test_exact_mode_forces_oracle(self):
        tc = generators.random_collection(7, 6, seed=3)
        out = transversal_ham_path(tc, mode="exact")
        ref = oracle.exact_transversal_ham_path(tc)
        assert out.status == ref.status

    def test_never_claims_not_exists_constructively(self):
        # constructive mode can only answer Found or BudgetExhausted
        for seed in range(30):
            tc = generators.random_collection(12, 11, seed=seed)
            out = transversal_ham_path(tc, mode="constructive")
            assert out.status in (FOUND, BUDGET_EXHAUSTED)
            if out.found:
                assert out.witness.is_hamilton(tc)


class TestExchangeStep:
    def test_prepend_splice_append(self):
        tc = generators.random_collection(10, 10, seed=5)
        # start from a single vertex and grow to Hamilton
        p = RainbowPath((0,), ())
        unused = set(range(10))
        while len(p.vertices) < 10:
            q = exchange_step(p, unused - set(p.colors), tc)
            assert q is not None
            assert len(q.vertices) == len(p.vertices) + 1
            assert q.valid(tc)
            p = q
        assert p.is_hamilton(tc)

    def test_saturated_path_returns_none(self):
        tc = generators.random_collection(6, 6, seed=1)
        p = RainbowPath((0,), ())
        unused = set(range(6))
        while len(p.vertices) < 6:
            p = exchange_step(p, unused - set(p.colors), tc)
        assert exchange_step(p, unused - set(p.colors), tc) is None


class TestCycleSolver:
    def test_small_delegates_to_oracle(self):
        for seed in range(50):
            tc = generators.random_collection(
                6, 6, seed=seed, strongly_connected_count=5
            )
            out = transversal_ham_cycle(tc)
            ref = oracle.exact_transversal_ham_cycle(tc)
            assert out.status == ref.status
            if out.found:
                assert out.witness.is_hamilton(tc)

    def test_counterexample_not_exists(self):
        _, cyc_inst = generators.fig1_counterexamples()
        out = transversal_ham_cycle(cyc_inst)
        assert out.status == NOT_EXISTS

    def test_impossibility_family(self):
        for n in (5, 8):
            out = transversal_ham_cycle(generators.prop14_collection(n))
            assert out.status == NOT_EXISTS

    def test_too_few_colors(self):
        tc = generators.random_collection(6, 5, seed=0)
        out = transversal_ham_cycle(tc)
        assert out.status == NOT_EXISTS

    def test_connectivity_precondition_noted(self):
        # all-transitive members cannot close a cycle; the violation is
        # reported in the notes and the verdict still comes from the search
        t = generators.transitive_tournament(6)
        from rainbow_tournaments.core import TournamentCollection

        tc = TournamentCollection([t] * 6)
        out = transversal_ham_cycle(tc)
        assert out.status == NOT_EXISTS
        assert "strongly connected" in out.notes

    def test_constructive_at_moderate_size(self):
        tc = generators.random_collection(
            80, 80, seed=2, strongly_connected_count=79
        )
        out = transversal_ham_cycle(tc, mode="constructive")
        assert out.status == FOUND
        assert out.witness.is_hamilton(tc)


class TestDeterminism:
    def test_same_params_same_witness(self):
        tc = generators.random_collection(60, 59, seed=9)
        a = transversal_ham_path(tc, PipelineParams(seed=4),
                                 mode="constructive")
        b = transversal_ham_path(tc, PipelineParams(seed=4),
                                 mode="constructive")
        assert a.status == b.status == FOUND
        assert a.witness == b.witness
