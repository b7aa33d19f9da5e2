"""Range assignment algorithms.

* ``mmsi``: exact minimum of the maximum sender interference for any monotone
  predicate, by binary search over uniform interference levels.
* ``mtsi_broadcast``: optimal total interference for broadcast from a source.
* ``heuristic_strong_total``: greedy total-interference heuristic for strong
  connectivity.
* ``mst_baseline``: Euclidean MST assignment, a comparison baseline only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.stats import rankdata

from .core import Instance, RangeAssignment, build_table
from .graph import InterferenceReport, build_graph, interference
from .predicates import Predicate, check, validate

log = logging.getLogger(__name__)


class Infeasible(Exception):
    """The predicate fails even when every node reaches every other node."""

    def __init__(self, predicate, report: Optional[InterferenceReport] = None,
                 num_edges: Optional[int] = None):
        self.predicate = predicate
        self.report = report
        self.num_edges = num_edges
        msg = f"predicate {predicate} cannot be satisfied"
        if num_edges is not None:
            msg += f" (saturated graph has {num_edges} edges)"
        super().__init__(msg)


@dataclass(frozen=True)
class MmsiResult:
    rho: RangeAssignment
    level: int
    # (level, feasible) for every level the search evaluated, in order
    probes: tuple[tuple[int, bool], ...] = ()


@dataclass(frozen=True)
class TotalResult:
    rho: RangeAssignment
    total: int
    running_total: Optional[int] = None


def mmsi(inst: Instance, p: Predicate) -> MmsiResult:
    """Minimum level k such that giving every node its level-k range satisfies p.

    The search keeps l infeasible and r feasible and halves the gap with the
    floor midpoint. Level n-1 (the saturated graph) is tested up front, and
    level 0 is tried before the loop so the invariant holds from the start.
    """
    n = inst.n
    validate(p, n)
    probes: list[tuple[int, bool]] = []

    if n == 1:
        rho = RangeAssignment.zeros(1)
        ok = check(build_graph(inst, rho), inst, p)
        probes.append((0, ok))
        if not ok:
            raise Infeasible(p, interference(inst, rho), 0)
        return MmsiResult(rho, 0, tuple(probes))

    table = build_table(inst)
    cache: dict[int, RangeAssignment] = {}

    def feasible(k: int) -> bool:
        rho = cache[k] = RangeAssignment(table.level_radii(k))
        g = build_graph(inst, rho)
        ok = check(g, inst, p)
        probes.append((k, ok))
        if not ok and k == n - 1:
            raise Infeasible(p, interference(inst, rho), g.num_edges)
        return ok

    lo, hi = 0, n - 1
    feasible(hi)
    if feasible(lo):
        return MmsiResult(cache[lo], lo, tuple(probes))
    while lo != hi - 1:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return MmsiResult(cache[hi], hi, tuple(probes))


def mtsi_broadcast(inst: Instance, s: int) -> TotalResult:
    """Give the source a radius reaching its farthest node; everyone else 0."""
    n = inst.n
    if not 0 <= s < n:
        raise ValueError(f"source {s} is not a node id")
    radii = np.zeros(n)
    if n == 1:
        return TotalResult(RangeAssignment(radii), 0)
    d = inst.distances_from(s)
    radii[s] = d.max()
    total = int(np.count_nonzero(d <= radii[s])) - 1
    return TotalResult(RangeAssignment(radii), total)


@dataclass(frozen=True)
class HeuristicStep:
    """One greedy step: grow ``u1`` to reach ``u2``, give ``u2`` a radius
    reaching ``u1p``. ``members`` and ``radii`` are the state before the step."""

    u1: int
    u1p: int
    u2: int
    cost: int
    members: tuple[int, ...] = field(repr=False)
    radii: tuple[float, ...] = field(repr=False)


def sender_cover_counts(inst: Instance) -> np.ndarray:
    """cover[u, v] = sender interference of u when its radius is d(u, v)."""
    d = inst.distance_matrix()
    # each row's self distance 0 ranks first; method="max" counts ties
    return rankdata(d, method="max", axis=1).astype(np.int64) - 1


def heuristic_strong_total(inst: Instance, trace: Optional[list] = None) -> TotalResult:
    """Greedy strong-connectivity assignment growing a tree from node 0.

    Each step picks u1, u1' in the grown set U1 and u2 outside it minimizing

        [I(u1 at d(u1,u2)) - I(u1 now)]^+ + I(u2 at d(u2,u1'))

    then sets rho(u1) = max(rho(u1), d(u1,u2)) and rho(u2) = d(u2,u1').
    Ranges never shrink, so edges already in U1 survive and U1 stays strongly
    connected. For a fixed u2 the two terms are independent, so the best
    triple is tracked with per-candidate minima that only ever decrease;
    each step is O(n). Ties go to the smallest u2, then u1, then u1'.

    Pass a list as ``trace`` to collect a ``HeuristicStep`` per iteration.
    """
    n = inst.n
    if n == 1:
        return TotalResult(RangeAssignment.zeros(1), 0, 0)
    d = inst.distance_matrix()
    cover = sender_cover_counts(inst)

    rho = np.zeros(n)
    level = np.zeros(n, dtype=np.int64)
    member = np.zeros(n, dtype=bool)
    member[0] = True

    # best increment over U1 for reaching each candidate, and who achieves it
    best_inc = cover[0].copy()
    best_u1 = np.zeros(n, dtype=np.int64)
    # cheapest way for each candidate to reach back into U1
    back_cost = cover[:, 0].copy()
    back_to = np.zeros(n, dtype=np.int64)

    running = 0
    big = np.iinfo(np.int64).max // 4
    for _ in range(n - 1):
        cost = np.where(member, big, best_inc + back_cost)
        u2 = int(np.argmin(cost))
        u1, u1p = int(best_u1[u2]), int(back_to[u2])
        step_cost = int(cost[u2])
        assert rho[u2] == 0 and level[u2] == 0, "candidate outside U1 already has a range"
        if trace is not None:
            trace.append(HeuristicStep(u1, u1p, u2, step_cost,
                                       tuple(np.flatnonzero(member).tolist()),
                                       tuple(rho.tolist())))
        running += step_cost

        if d[u1, u2] > rho[u1]:
            rho[u1] = d[u1, u2]
            level[u1] = cover[u1, u2]
        rho[u2] = d[u2, u1p]
        level[u2] = cover[u2, u1p]
        member[u2] = True

        for m in (u1, u2):
            inc = np.maximum(cover[m] - level[m], 0)
            better = (inc < best_inc) | ((inc == best_inc) & (m < best_u1))
            best_inc[better] = inc[better]
            best_u1[better] = m
        col = cover[:, u2]
        better = (col < back_cost) | ((col == back_cost) & (u2 < back_to))
        back_cost[better] = col[better]
        back_to[better] = u2

    result = RangeAssignment(rho)
    total = interference(inst, result).total_sender
    if total != running:
        log.info("heuristic running total %d differs from recount %d", running, total)
    return TotalResult(result, total, running)


def mst_baseline(inst: Instance) -> TotalResult:
    """Comparison baseline (substitute, not a published method): each node's
    radius is its longest incident Euclidean MST edge."""
    n = inst.n
    radii = np.zeros(n)
    if n > 1:
        tree = minimum_spanning_tree(inst.distance_matrix()).tocoo()
        np.maximum.at(radii, tree.row, tree.data)
        np.maximum.at(radii, tree.col, tree.data)
    rho = RangeAssignment(radii)
    return TotalResult(rho, interference(inst, rho).total_sender)
