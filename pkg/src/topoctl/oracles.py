"""Brute-force reference implementations for cross-checking the algorithms.

These deliberately avoid the fast paths in ``algorithms``: interference is
recounted from raw distances and small searches enumerate everything.

Candidate radii: a node's interference count and out-edges are step functions
of its radius that change only at the distances to other nodes. Any feasible
assignment can therefore be shrunk, node by node, to the largest candidate
(0 or a pairwise distance) not above it without losing an edge or gaining
interference, so searching over candidate radii loses nothing.
"""

from __future__ import annotations

import itertools

import numpy as np

from .algorithms import Infeasible, MmsiResult, TotalResult
from .core import Instance, RangeAssignment
from .graph import build_graph
from .predicates import Broadcast, Predicate, StrongConnectivity, check, validate

LINEAR_SCAN_CAP = 64
EXHAUSTIVE_CAP = 5


def _count(d_row: np.ndarray, node: int, radius: float) -> int:
    return sum(1 for v, dv in enumerate(d_row) if v != node and dv <= radius)


def uniform_level_radii(inst: Instance, k: int) -> np.ndarray:
    """For each node, the largest candidate radius covering at most k others,
    found by recounting every candidate."""
    d = inst.distance_matrix()
    radii = np.zeros(inst.n)
    for i in range(inst.n):
        best = 0.0
        for r in d[i]:
            if r > best and _count(d[i], i, r) <= k:
                best = float(r)
        radii[i] = best
    return radii


def mmsi_linear_scan(inst: Instance, p: Predicate, cap: int = LINEAR_SCAN_CAP) -> MmsiResult:
    """First level k = 0, 1, ... whose uniform assignment satisfies p."""
    n = inst.n
    if n > cap:
        raise ValueError(f"linear scan limited to n <= {cap} (got {n})")
    validate(p, n)
    probes = []
    for k in range(n):
        rho = RangeAssignment(uniform_level_radii(inst, k))
        ok = check(build_graph(inst, rho), inst, p)
        probes.append((k, ok))
        if ok:
            return MmsiResult(rho, k, tuple(probes))
    raise Infeasible(p)


def _reach_mask(out_masks: list[int], start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= out_masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def _satisfies(inst: Instance, p: Predicate, radii, out_masks: list[int]) -> bool:
    n = inst.n
    full = (1 << n) - 1
    if isinstance(p, StrongConnectivity):
        if _reach_mask(out_masks, 0) != full:
            return False
        in_masks = [0] * n
        for u, m in enumerate(out_masks):
            for v in range(n):
                if m >> v & 1:
                    in_masks[v] |= 1 << u
        return _reach_mask(in_masks, 0) == full
    if isinstance(p, Broadcast):
        return _reach_mask(out_masks, p.source) == full
    return check(build_graph(inst, RangeAssignment(radii)), inst, p)


def exhaustive_min_total(inst: Instance, p: Predicate, cap: int = EXHAUSTIVE_CAP) -> TotalResult:
    """Minimum total sender interference over all candidate-radius tuples."""
    n = inst.n
    if n > cap:
        raise ValueError(f"exhaustive search limited to n <= {cap} (got {n})")
    validate(p, n)
    d = inst.distance_matrix()
    # per node: (radius, interference, out-neighbor bitmask) for each distinct candidate
    options = []
    for u in range(n):
        opts = []
        for r in sorted({0.0, *(float(x) for v, x in enumerate(d[u]) if v != u)}):
            mask = sum(1 << v for v in range(n) if v != u and d[u, v] <= r)
            opts.append((r, bin(mask).count("1"), mask))
        options.append(opts)

    best = None
    for combo in itertools.product(*options):
        total = sum(c[1] for c in combo)
        if best is not None and total >= best[0]:
            continue
        radii = [c[0] for c in combo]
        if _satisfies(inst, p, radii, [c[2] for c in combo]):
            best = (total, radii)
    if best is None:
        raise Infeasible(p)
    return TotalResult(RangeAssignment(best[1]), best[0])


def brute_cover_counts(inst: Instance) -> np.ndarray:
    """counts[u, v] = number of other nodes within d(u, v) of u, by direct count."""
    d = inst.distance_matrix()
    return np.array([[int(np.count_nonzero(d[u] <= d[u, v])) - 1 for v in range(inst.n)]
                     for u in range(inst.n)])


def naive_step_costs(inst: Instance, members, radii,
                     counts: np.ndarray | None = None) -> dict[tuple[int, int, int], int]:
    """Cost of every (u1, u1', u2) triple for one greedy step.

    cost = [I(u1 at d(u1,u2)) - I(u1 at rho(u1))]^+ + I(u2 at d(u2,u1'))
    """
    d = inst.distance_matrix()
    if counts is None:
        counts = brute_cover_counts(inst)
    members = list(members)
    inside = set(members)
    outside = [v for v in range(inst.n) if v not in inside]
    costs = {}
    for w1 in members:
        now = _count(d[w1], w1, radii[w1])
        for w2 in outside:
            grow = max(int(counts[w1, w2]), now) - now
            for w1p in members:
                costs[(w1, w1p, w2)] = grow + int(counts[w2, w1p])
    return costs


def naive_best_step(inst: Instance, members, radii,
                    counts: np.ndarray | None = None) -> tuple[tuple[int, int, int], int]:
    """Minimum-cost triple, ties to smallest u2, then u1, then u1'."""
    costs = naive_step_costs(inst, members, radii, counts)
    (u1, u1p, u2), c = min(costs.items(), key=lambda kv: (kv[1], kv[0][2], kv[0][0], kv[0][1]))
    return (u1, u1p, u2), c
