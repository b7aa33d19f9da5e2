"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of
the run by the terminal-summary hook in conftest.py."""

import time

import numpy as np
import pytest

from topoctl.algorithms import Infeasible, heuristic_strong_total, mmsi, mtsi_broadcast
from topoctl.core import generate_instance
from topoctl.experiment import ExperimentConfig, run_experiment
from topoctl.graph import build_graph, interference
from topoctl.oracles import (brute_cover_counts, exhaustive_min_total, mmsi_linear_scan,
                             naive_best_step)
from topoctl.predicates import (Broadcast, KEdgeConnectivity, KVertexConnectivity,
                                StrongConnectivity, TSpanner, check_broadcast, check_k_edge,
                                check_k_vertex, check_spanner, check_strong)

from conftest import random_assignment, random_graph, random_supergraph

RESULTS = []


def record(name, ok, detail):
    RESULTS.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


def sized(count, lo, hi, seed):
    rng = np.random.default_rng(seed)
    return [(int(rng.integers(lo, hi + 1)), seed * 10_000 + i) for i in range(count)]


def level_or_none(fn, inst, p):
    try:
        return fn(inst, p).level
    except Infeasible:
        return None


def test_01_mmsi_optimality():
    preds = [StrongConnectivity(), Broadcast(0), KEdgeConnectivity(2),
             KVertexConnectivity(2), TSpanner(2.0)]
    start = time.perf_counter()
    mismatches, feasible, infeasible = [], 0, 0
    for n, seed in sized(200, 2, 12, seed=1):
        inst = generate_instance(n, 1000, seed)
        for p in preds:
            fast = level_or_none(mmsi, inst, p)
            slow = level_or_none(mmsi_linear_scan, inst, p)
            if fast != slow:
                mismatches.append((seed, str(p), fast, slow))
            feasible += fast is not None
            infeasible += fast is None
    elapsed = time.perf_counter() - start
    record("1 MMSI optimality", not mismatches and elapsed < 30,
           f"{feasible} feasible + {infeasible} infeasible cases, "
           f"{len(mismatches)} mismatches, {elapsed:.1f}s (< 30s)")


def test_02_conservation():
    rng = np.random.default_rng(2)
    bad = 0
    for n, seed in sized(1000, 1, 50, seed=2):
        inst = generate_instance(n, 1000, seed)
        rho = random_assignment(inst, rng, saturation=rng.uniform(0.1, 1.0))
        rep = interference(inst, rho)
        edges = build_graph(inst, rho).num_edges
        bad += not (rep.total_sender == rep.total_receiver == edges)
    record("2 conservation", bad == 0, f"1000 pairs, {bad} violations")


def test_03_broadcast_optimum():
    rng = np.random.default_rng(3)
    bad = 0
    for n, seed in sized(500, 1, 200, seed=3):
        inst = generate_instance(n, 1000, seed)
        s = int(rng.integers(n))
        res = mtsi_broadcast(inst, s)
        ok = (res.total == n - 1 == interference(inst, res.rho).total_sender
              and check_broadcast(build_graph(inst, res.rho), s))
        bad += not ok
    small_bad = 0
    for n, seed in sized(50, 1, 4, seed=33):
        inst = generate_instance(n, 1000, seed)
        s = int(rng.integers(n))
        small_bad += exhaustive_min_total(inst, Broadcast(s)).total != n - 1
    record("3 broadcast optimum", bad == 0 and small_bad == 0,
           f"500 instances: {bad} failures; 50 exhaustive n<=4: {small_bad} failures")


def test_04_heuristic_soundness():
    bad = 0
    for n, seed in sized(500, 2, 200, seed=4):
        inst = generate_instance(n, 1000, seed)
        bad += not check_strong(build_graph(inst, heuristic_strong_total(inst).rho))
    record("4 heuristic strong connectivity", bad == 0, f"500 instances, {bad} not strong")


def test_05_heuristic_vs_exhaustive():
    # seed set 5000..5099; first verified run: all within 1.29x, 82% exactly optimal
    below, within = 0, 0
    for i in range(100):
        inst = generate_instance(5, 1000, 5000 + i)
        opt = exhaustive_min_total(inst, StrongConnectivity()).total
        h = heuristic_strong_total(inst).total
        below += h < opt
        within += h <= 1.5 * opt
    record("5 heuristic vs exhaustive (n=5)", below == 0 and within >= 90,
           f"{below} below optimum, {within}/100 within 1.5x (need >= 90)")


def test_06_table_band():
    cfg = ExperimentConfig(sizes=(10, 100, 500), trials=100, grid=1000.0, seed=0,
                           algorithms=("heuristic",))
    start = time.perf_counter()
    rows = run_experiment(cfg).rows
    elapsed = time.perf_counter() - start
    means = {r.n: r.mean_avg_per_node for r in rows}
    ok = all(2.0 <= m <= 2.4 for m in means.values()) and elapsed < 600
    detail = ", ".join(f"n={n}: {m:.3f}" for n, m in means.items())
    record("6 per-node interference band [2.0, 2.4]", ok, f"{detail} ({elapsed:.1f}s)")


def test_07_selection_exactness():
    steps, bad = 0, []
    for n, seed in sized(100, 2, 30, seed=7):
        inst = generate_instance(n, 1000, seed)
        counts = brute_cover_counts(inst)
        trace = []
        heuristic_strong_total(inst, trace)
        for step in trace:
            steps += 1
            _, cost = naive_best_step(inst, step.members, step.radii, counts)
            if step.cost != cost:
                bad.append((seed, step))
    record("7 selection decomposition", not bad,
           f"100 instances, {steps} steps, {len(bad)} cost mismatches")


def test_08_monotonicity_and_identities():
    rng = np.random.default_rng(8)
    checkers = {
        "strong": lambda g, inst: check_strong(g),
        "broadcast:0": lambda g, inst: check_broadcast(g, 0),
        "kedge:2": lambda g, inst: check_k_edge(g, 2),
        "kvertex:2": lambda g, inst: check_k_vertex(g, 2),
        "spanner:2": lambda g, inst: check_spanner(g, inst, 2.0),
    }
    violations = {name: 0 for name in checkers}
    for name, fn in checkers.items():
        for i in range(200):
            n = int(rng.integers(2, 10))
            inst = generate_instance(n, 1000, 80_000 + i)
            g = random_graph(n, rng.uniform(0.1, 0.9), rng)
            big = random_supergraph(g, rng, extra=rng.uniform(0.05, 0.5))
            violations[name] += fn(g, inst) and not fn(big, inst)
    ident_bad = 0
    for i in range(200):
        n = int(rng.integers(2, 12))
        inst = generate_instance(n, 1000, 90_000 + i)
        g = random_graph(n, rng.uniform(0.05, 0.6), rng)
        s = check_strong(g)
        ok = s == check_k_edge(g, 1) == check_k_vertex(g, 1) == check_spanner(g, inst, 1e12)
        if s:
            ok = ok and all(check_broadcast(g, v) for v in range(n))
        ident_bad += not ok
    total = sum(violations.values())
    record("8 monotonicity + identities", total == 0 and ident_bad == 0,
           f"monotonicity violations {violations}; identity failures {ident_bad}/200")


@pytest.mark.slow
def test_09_scaling():
    inst = generate_instance(1000, 1000, 9)
    t0 = time.perf_counter()
    res = heuristic_strong_total(inst)
    t_heur = time.perf_counter() - t0
    strong = check_strong(build_graph(inst, res.rho))
    inst300 = generate_instance(300, 1000, 9)
    t0 = time.perf_counter()
    mmsi(inst300, StrongConnectivity())
    t_mmsi = time.perf_counter() - t0
    record("9 scaling", strong and t_heur < 120 and t_mmsi < 30,
           f"heuristic n=1000 {t_heur:.2f}s (< 120s), mmsi strong n=300 {t_mmsi:.2f}s (< 30s)")
