"""Communication graphs induced by range assignments, and interference counts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse

from .core import Instance, RangeAssignment, as_assignment


class CommGraph:
    """Directed graph with an edge u->v whenever v lies within u's radius.

    Stored as a dense boolean adjacency matrix; ``edges`` gives the sorted
    (u, v) edge array and ``successors`` the per-node out-neighbor lists.
    """

    def __init__(self, adj: np.ndarray):
        adj = np.array(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        np.fill_diagonal(adj, False)
        adj.setflags(write=False)
        self.adj = adj

    @classmethod
    def from_edges(cls, n: int, edges) -> "CommGraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u, v] = True
        return cls(adj)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @cached_property
    def edges(self) -> np.ndarray:
        return np.argwhere(self.adj)

    @property
    def num_edges(self) -> int:
        return int(self.adj.sum())

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def successors(self, u: int) -> list[int]:
        return np.flatnonzero(self.adj[u]).tolist()

    def out_degree(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def in_degree(self) -> np.ndarray:
        return self.adj.sum(axis=0)

    def to_csr(self, weights: np.ndarray | None = None) -> sparse.csr_matrix:
        if weights is None:
            return sparse.csr_matrix(self.adj.astype(np.int32))
        u, v = self.edges.T
        return sparse.csr_matrix((weights[u, v], (u, v)), shape=self.adj.shape)

    def __repr__(self):
        return f"CommGraph(n={self.n}, edges={self.num_edges})"


def _check_length(inst: Instance, rho: RangeAssignment) -> None:
    if len(rho) != inst.n:
        raise ValueError(f"assignment has {len(rho)} radii for {inst.n} nodes")


def build_graph(inst: Instance, rho) -> CommGraph:
    rho = as_assignment(rho)
    _check_length(inst, rho)
    d = inst.distance_matrix()
    # A node exactly at distance rho(u) is reached (<=, no epsilon).
    return CommGraph(d <= rho.radii[:, None])


@dataclass(frozen=True)
class InterferenceReport:
    sender: tuple[int, ...]
    receiver: tuple[int, ...]

    @property
    def max_sender(self) -> int:
        return max(self.sender)

    @property
    def total_sender(self) -> int:
        return sum(self.sender)

    @property
    def max_receiver(self) -> int:
        return max(self.receiver)

    @property
    def total_receiver(self) -> int:
        return sum(self.receiver)


def interference(inst: Instance, rho) -> InterferenceReport:
    """Sender and receiver interference of every node under ``rho``.

    sender[u] counts the nodes inside u's own radius; receiver[u] counts the
    nodes whose radius covers u.
    """
    g = build_graph(inst, rho)
    return InterferenceReport(
        sender=tuple(g.out_degree().tolist()),
        receiver=tuple(g.in_degree().tolist()),
    )


def format_edges(g: CommGraph) -> str:
    """Edge list dump, one ``u v`` per line."""
    return "".join(f"{u} {v}\n" for u, v in g.edges.tolist())
