"""Random-instance experiment harness for the total-interference heuristics.

Trial ``i`` of every size uses seed ``base_seed + i``, so any row can be
regenerated on its own and parallel runs give the same numbers.
"""

from __future__ import annotations

import csv
import io
import logging
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algorithms import heuristic_strong_total, mst_baseline
from .core import generate_instance
from .graph import interference

log = logging.getLogger(__name__)

ALGORITHMS = {
    "heuristic": heuristic_strong_total,
    "mst_baseline": mst_baseline,
}
LABELS = {
    "heuristic": "greedy strong-connectivity heuristic",
    "mst_baseline": "Euclidean MST baseline (substitute comparison, not a published method)",
}


@dataclass(frozen=True)
class ExperimentConfig:
    sizes: tuple[int, ...]
    trials: int = 100
    grid: float = 1000.0
    seed: int = 0
    algorithms: tuple[str, ...] = ("heuristic", "mst_baseline")

    def __post_init__(self):
        if not self.sizes:
            raise ValueError("at least one size is required")
        if any(n < 1 for n in self.sizes):
            raise ValueError("sizes must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.grid > 0:
            raise ValueError("grid must be positive")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {', '.join(sorted(unknown))}")

    def trial_seed(self, trial: int) -> int:
        return self.seed + trial


@dataclass(frozen=True)
class TrialResult:
    n: int
    algorithm: str
    trial: int
    seed: int
    total: Optional[int]
    error: Optional[str] = None

    @property
    def avg_per_node(self) -> Optional[float]:
        return None if self.total is None else self.total / self.n


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    algorithm: str
    trials: int
    mean_total: float
    mean_avg_per_node: float
    std_dev: float  # sample std of per-node average across trials


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[ExperimentRow] = field(default_factory=list)
    trials: list[TrialResult] = field(default_factory=list)


def run_trial(n: int, trial: int, seed: int, grid: float,
              algorithms: Sequence[str]) -> list[TrialResult]:
    inst = generate_instance(n, grid, seed)
    out = []
    for name in algorithms:
        try:
            res = ALGORITHMS[name](inst)
            total = interference(inst, res.rho).total_sender
            out.append(TrialResult(n, name, trial, seed, total))
        except Exception as exc:  # one bad trial must not sink the run
            log.error("n=%d trial=%d seed=%d %s failed: %s", n, trial, seed, name, exc)
            out.append(TrialResult(n, name, trial, seed, None, repr(exc)))
    return out


def _run_trial_args(args):
    return run_trial(*args)


def summarize(n: int, algorithm: str, results: Sequence[TrialResult]) -> ExperimentRow:
    ok = [r for r in results if r.total is not None]
    if not ok:
        nan = float("nan")
        return ExperimentRow(n, algorithm, 0, nan, nan, nan)
    totals = [r.total for r in ok]
    avgs = [r.avg_per_node for r in ok]
    std = statistics.stdev(avgs) if len(avgs) > 1 else 0.0
    return ExperimentRow(n, algorithm, len(ok), statistics.fmean(totals),
                         statistics.fmean(avgs), std)


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    tasks = [(n, t, config.trial_seed(t), config.grid, config.algorithms)
             for n in config.sizes for t in range(config.trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_run_trial_args, tasks, chunksize=4))
    else:
        batches = [run_trial(*task) for task in tasks]

    trials = sorted((r for batch in batches for r in batch),
                    key=lambda r: (config.sizes.index(r.n), config.algorithms.index(r.algorithm), r.trial))
    result = ExperimentResult(config, trials=trials)
    for n in config.sizes:
        for name in config.algorithms:
            subset = [r for r in trials if r.n == n and r.algorithm == name]
            result.rows.append(summarize(n, name, subset))
    return result


def _comments(config: ExperimentConfig) -> list[str]:
    lines = [
        f"# grid={config.grid:g} trials={config.trials} base_seed={config.seed}",
        "# trial i uses seed base_seed + i",
    ]
    lines += [f"# {name}: {LABELS[name]}" for name in config.algorithms]
    return lines


def summary_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    for line in _comments(result.config):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "algorithm", "trials", "mean_total", "mean_avg_per_node", "std_dev"])
    for r in result.rows:
        w.writerow([r.n, r.algorithm, r.trials, f"{r.mean_total:.6f}",
                    f"{r.mean_avg_per_node:.6f}", f"{r.std_dev:.6f}"])
    return buf.getvalue()


def raw_csv(result: ExperimentResult) -> str:
    buf = io.StringIO()
    for line in _comments(result.config):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "algorithm", "trial", "seed", "total", "avg_per_node", "error"])
    for r in result.trials:
        avg = "" if r.total is None else f"{r.avg_per_node:.6f}"
        w.writerow([r.n, r.algorithm, r.trial, r.seed,
                    "" if r.total is None else r.total, avg, r.error or ""])
    return buf.getvalue()


def gnuplot_summary(result: ExperimentResult) -> str:
    """Whitespace table: n followed by mean and std of per-node average for
    each algorithm, ready for ``plot 'f' using 1:2 with linespoints``."""
    algs = result.config.algorithms
    by_key = {(r.n, r.algorithm): r for r in result.rows}
    head = "# n " + " ".join(f"{a}_mean {a}_std" for a in algs)
    lines = [head]
    for n in result.config.sizes:
        cells = []
        for a in algs:
            r = by_key[(n, a)]
            cells += [f"{r.mean_avg_per_node:.6f}", f"{r.std_dev:.6f}"]
        lines.append(" ".join([str(n), *cells]))
    return "\n".join(lines) + "\n"
