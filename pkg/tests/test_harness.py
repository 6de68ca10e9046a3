"""Verification suites: counting, failure records, parallel determinism."""

import pytest

from rainbow_tournaments import harness


class TestTheoremSweeps:
    def test_exhaustive_path_n3(self):
        rep = harness.verify_theorem_path(3, 3, mode="exhaustive")
        assert rep.ok
        assert rep.instances == 64
        # the opposite-triangle pair, in both orders, is the only miss
        assert rep.stats["not_exists"] == 2

    def test_random_path_sweep(self):
        rep = harness.verify_theorem_path(4, 6, mode="random",
                                          seeds=range(20))
        assert rep.ok and rep.instances == 60

    def test_random_cycle_sweep(self):
        rep = harness.verify_theorem_cycle(4, 6, mode="random",
                                           seeds=range(20))
        assert rep.ok and rep.instances == 60

    def test_exhaustive_cycle_limit(self):
        with pytest.raises(ValueError):
            harness.verify_theorem_cycle(3, 4, mode="exhaustive")


class TestLemmaSuites:
    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError):
            harness.verify_lemmas("nope", [5])

    def test_every_suite_runs_clean(self):
        sizes = {
            "hpartition": [12, 30],
            "low_degree": [6, 9],
            "one_spare": [5, 12],
            "forcing_color": [6, 10],
            "forcing_set": [60],
            "rainbow_connect": [10],
            "absorber": [20],
        }
        for suite, ns in sizes.items():
            rep = harness.verify_lemmas(suite, ns, seeds=range(3))
            assert rep.ok, (suite, rep.failures[:2])


class TestReports:
    def test_timing_fields_stripped(self):
        rep = harness.verify_theorem_path(4, 4, seeds=range(3))
        line = rep.to_jsonl(include_timing=False)
        assert "wall_secs" not in line
        assert "wall_secs" in rep.to_jsonl(include_timing=True)

    def test_jobs_do_not_change_report(self):
        a = harness.verify_theorem_path(4, 5, seeds=range(8), jobs=1)
        b = harness.verify_theorem_path(4, 5, seeds=range(8), jobs=4)
        assert a.to_jsonl(False) == b.to_jsonl(False)


class TestBench:
    def test_csv_shape(self):
        rep = harness.bench("h_partition", [20, 40], seeds=range(2))
        lines = rep.stats["csv"].strip().splitlines()
        assert lines[0] == "kind,n,seed,millis,extra"
        assert len(lines) == 5

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            harness.bench("nope", [5])
