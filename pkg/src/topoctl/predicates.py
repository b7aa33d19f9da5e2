"""Connectivity predicates on communication graphs.

Every predicate here is monotone: adding edges never turns a satisfied
predicate into an unsatisfied one, which is what makes a binary search over
interference levels valid. Connectivity notions are the strong (ordered pair)
variants because communication graphs are directed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import (breadth_first_order, connected_components,
                                  dijkstra, maximum_flow)

from .core import Instance
from .graph import CommGraph


@dataclass(frozen=True)
class StrongConnectivity:
    def __str__(self):
        return "strong"


@dataclass(frozen=True)
class Broadcast:
    source: int

    def __post_init__(self):
        if self.source < 0:
            raise ValueError("broadcast source must be a node id")

    def __str__(self):
        return f"broadcast:{self.source}"


@dataclass(frozen=True)
class KEdgeConnectivity:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k-edge connectivity needs k >= 1")

    def __str__(self):
        return f"kedge:{self.k}"


@dataclass(frozen=True)
class KVertexConnectivity:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k-vertex connectivity needs k >= 1")

    def __str__(self):
        return f"kvertex:{self.k}"


@dataclass(frozen=True)
class TSpanner:
    t: float

    def __post_init__(self):
        if not self.t >= 1:
            raise ValueError("spanner stretch must be >= 1")

    def __str__(self):
        return f"spanner:{self.t:g}"


Predicate = Union[StrongConnectivity, Broadcast, KEdgeConnectivity,
                  KVertexConnectivity, TSpanner]


def parse_predicate(spec: str) -> Predicate:
    """Parse ``strong``, ``broadcast:<id>``, ``kedge:<k>``, ``kvertex:<k>`` or ``spanner:<t>``."""
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    try:
        if name == "strong" and not arg:
            return StrongConnectivity()
        if name == "broadcast":
            return Broadcast(int(arg))
        if name == "kedge":
            return KEdgeConnectivity(int(arg))
        if name == "kvertex":
            return KVertexConnectivity(int(arg))
        if name == "spanner":
            return TSpanner(float(arg))
    except ValueError as exc:
        raise ValueError(f"bad predicate {spec!r}: {exc}") from None
    raise ValueError(f"unknown predicate {spec!r}")


def validate(p: Predicate, n: int) -> None:
    """Reject predicate parameters that cannot refer to an n-node instance."""
    if isinstance(p, Broadcast) and not 0 <= p.source < n:
        raise ValueError(f"broadcast source {p.source} is not a node id (n={n})")


def check_strong(g: CommGraph) -> bool:
    if g.n <= 1:
        return True
    ncomp, _ = connected_components(g.to_csr(), directed=True, connection="strong")
    return ncomp == 1


def check_broadcast(g: CommGraph, s: int) -> bool:
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} is not a node id")
    reached = breadth_first_order(g.to_csr(), s, directed=True, return_predecessors=False)
    return len(reached) == g.n


def _flow(cap: sparse.csr_matrix, s: int, t: int) -> int:
    return int(maximum_flow(cap, s, t).flow_value)


def check_k_edge(g: CommGraph, k: int) -> bool:
    """At least k edge-disjoint paths between every ordered pair.

    The directed global min cut is min over v of flow(r, v) and flow(v, r)
    for any fixed root r, so 2(n-1) unit-capacity max-flows suffice.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    if n <= 1:
        return True
    if g.out_degree().min() < k or g.in_degree().min() < k:
        return False
    cap = g.to_csr()
    for v in range(1, n):
        if _flow(cap, 0, v) < k or _flow(cap, v, 0) < k:
            return False
    return True


def _split_network(g: CommGraph) -> sparse.csr_matrix:
    # node v -> in-copy v and out-copy v+n joined by a unit arc
    n = g.n
    u, v = g.edges.T if g.num_edges else (np.empty(0, int), np.empty(0, int))
    rows = np.concatenate([np.arange(n), u + n])
    cols = np.concatenate([np.arange(n) + n, v])
    data = np.ones(len(rows), dtype=np.int32)
    return sparse.csr_matrix((data, (rows, cols)), shape=(2 * n, 2 * n))


def check_k_vertex(g: CommGraph, k: int) -> bool:
    """n > k and at least k internally vertex-disjoint paths for every
    ordered pair (u, v) without a direct edge u->v."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    if n <= k:
        return False
    if g.out_degree().min() < k or g.in_degree().min() < k:
        return False
    cap = _split_network(g)
    adj = g.adj
    for u in range(n):
        for v in range(n):
            if u != v and not adj[u, v] and _flow(cap, u + n, v) < k:
                return False
    return True


def check_spanner(g: CommGraph, inst: Instance, t: float) -> bool:
    """Shortest directed path (Euclidean edge weights) within t times the
    straight-line distance for every ordered pair. Unreachable pairs fail."""
    if not t >= 1:
        raise ValueError("t must be >= 1")
    n = g.n
    if n <= 1:
        return True
    d = inst.distance_matrix()
    dg = dijkstra(g.to_csr(d), directed=True)
    off = ~np.eye(n, dtype=bool)
    ok = np.isfinite(dg) & (dg <= t * d)
    return bool(ok[off].all())


def check(g: CommGraph, inst: Instance, p: Predicate) -> bool:
    """Does ``g`` (built from ``inst``) satisfy predicate ``p``?"""
    match p:
        case StrongConnectivity():
            return check_strong(g)
        case Broadcast(source=s):
            return check_broadcast(g, s)
        case KEdgeConnectivity(k=k):
            return check_k_edge(g, k)
        case KVertexConnectivity(k=k):
            return check_k_vertex(g, k)
        case TSpanner(t=t):
            return check_spanner(g, inst, t)
    raise TypeError(f"not a predicate: {p!r}")


__all__ = [
    "Predicate", "StrongConnectivity", "Broadcast", "KEdgeConnectivity",
    "KVertexConnectivity", "TSpanner", "parse_predicate", "validate", "check",
    "check_strong", "check_broadcast", "check_k_edge", "check_k_vertex",
    "check_spanner",
]
