import math

import pytest

from topoctl.experiment import (ExperimentConfig, TrialResult, gnuplot_summary, raw_csv,
                                run_experiment, summarize, summary_csv)


def test_forced_two_node_average():
    res = run_experiment(ExperimentConfig(sizes=(2,), trials=5, algorithms=("heuristic",)))
    (row,) = res.rows
    assert row.mean_avg_per_node == 1.0 and row.mean_total == 2.0 and row.trials == 5


def test_seed_schedule():
    cfg = ExperimentConfig(sizes=(4, 6), trials=3, seed=10)
    res = run_experiment(cfg)
    assert [r.seed for r in res.trials if r.n == 4 and r.algorithm == "heuristic"] == [10, 11, 12]
    assert [(r.n, r.algorithm) for r in res.rows] == [
        (4, "heuristic"), (4, "mst_baseline"), (6, "heuristic"), (6, "mst_baseline")]


def test_parallel_matches_serial():
    cfg = ExperimentConfig(sizes=(8, 15), trials=4, seed=2)
    assert summary_csv(run_experiment(cfg, jobs=2)) == summary_csv(run_experiment(cfg))
    assert raw_csv(run_experiment(cfg, jobs=2)) == raw_csv(run_experiment(cfg))


def test_row_consistency():
    res = run_experiment(ExperimentConfig(sizes=(20,), trials=6, seed=1))
    for row in res.rows:
        assert row.mean_avg_per_node == pytest.approx(row.mean_total / row.n, rel=1e-12)
        assert row.std_dev >= 0


def test_failed_trials_are_excluded():
    ok = TrialResult(5, "heuristic", 0, 0, 10)
    bad = TrialResult(5, "heuristic", 1, 1, None, "boom")
    row = summarize(5, "heuristic", [ok, bad])
    assert row.trials == 1 and row.mean_total == 10 and row.std_dev == 0.0
    empty = summarize(5, "heuristic", [bad])
    assert empty.trials == 0 and math.isnan(empty.mean_total)


def test_csv_comments_record_seeds():
    text = summary_csv(run_experiment(ExperimentConfig(sizes=(3,), trials=1, seed=7)))
    assert "# grid=1000 trials=1 base_seed=7" in text
    assert "substitute" in text


def test_gnuplot_columns():
    res = run_experiment(ExperimentConfig(sizes=(3, 4), trials=2))
    lines = gnuplot_summary(res).splitlines()
    assert lines[0] == "# n heuristic_mean heuristic_std mst_baseline_mean mst_baseline_std"
    assert [ln.split()[0] for ln in lines[1:]] == ["3", "4"]
    assert all(len(ln.split()) == 5 for ln in lines[1:])


@pytest.mark.parametrize("kwargs", [
    dict(sizes=()), dict(sizes=(0,)), dict(sizes=(5,), trials=0),
    dict(sizes=(5,), grid=0), dict(sizes=(5,), algorithms=("smit",)),
    dict(sizes=(5,), algorithms=()),
])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ExperimentConfig(**kwargs)
