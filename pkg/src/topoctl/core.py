"""Geometric primitives, problem instances and the sorted neighbor table."""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

import numpy as np


class InstanceError(ValueError):
    """Raised for malformed instances or instance files."""


class Point(NamedTuple):
    x: float
    y: float


def distance(a: Point, b: Point) -> float:
    """Euclidean distance between two points."""
    return float(np.hypot(a[0] - b[0], a[1] - b[1]))


@dataclass(frozen=True, eq=False)
class Instance:
    """An ordered set of sensor positions with an optional broadcast source.

    Node ids are the 0-based positions in ``nodes``.
    """

    nodes: tuple[Point, ...]
    source: Optional[int] = None
    coords: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        nodes = tuple(Point(float(x), float(y)) for x, y in self.nodes)
        if not nodes:
            raise InstanceError("an instance needs at least one node")
        coords = np.array(nodes, dtype=float).reshape(len(nodes), 2)
        if not np.all(np.isfinite(coords)):
            raise InstanceError("node coordinates must be finite")
        if len(np.unique(coords, axis=0)) != len(nodes):
            raise InstanceError("two nodes share the same position")
        if self.source is not None and not 0 <= self.source < len(nodes):
            raise InstanceError(f"source {self.source} is not a node id")
        coords.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return self.nodes == other.nodes and self.source == other.source

    def __hash__(self):
        return hash((self.nodes, self.source))

    def with_source(self, source: Optional[int]) -> "Instance":
        return Instance(self.nodes, source)

    def distances_from(self, node: int) -> np.ndarray:
        """Distances from ``node`` to every node (0 at ``node`` itself)."""
        c = self.coords
        return np.hypot(c[:, 0] - c[node, 0], c[:, 1] - c[node, 1])

    def distance_matrix(self) -> np.ndarray:
        # Same elementwise expression as distances_from, so both agree bit for bit.
        c = self.coords
        return np.hypot(c[:, 0, None] - c[None, :, 0], c[:, 1, None] - c[None, :, 1])

    def checksum(self) -> str:
        """Short hex digest of the node positions (for run logs)."""
        return hashlib.sha256(np.ascontiguousarray(self.coords).tobytes()).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class RangeAssignment:
    """One non-negative transmission radius per node."""

    radii: np.ndarray

    def __post_init__(self):
        radii = np.array(self.radii, dtype=float).reshape(-1)
        if not np.all(np.isfinite(radii)) or np.any(radii < 0):
            raise ValueError("radii must be finite and non-negative")
        radii.setflags(write=False)
        object.__setattr__(self, "radii", radii)

    def __len__(self) -> int:
        return len(self.radii)

    def __getitem__(self, i):
        return self.radii[i]

    def __iter__(self):
        return iter(self.radii.tolist())

    def __eq__(self, other):
        if not isinstance(other, RangeAssignment):
            return NotImplemented
        return np.array_equal(self.radii, other.radii)

    def __repr__(self):
        return f"RangeAssignment({self.radii.tolist()!r})"

    @classmethod
    def zeros(cls, n: int) -> "RangeAssignment":
        return cls(np.zeros(n))


def as_assignment(rho) -> RangeAssignment:
    return rho if isinstance(rho, RangeAssignment) else RangeAssignment(rho)


@dataclass(frozen=True, eq=False)
class SortedNeighborTable:
    """Per-node distances to every other node, ascending.

    ``dist[i]`` holds the n-1 distances from node i and ``ids[i]`` the matching
    neighbor ids. Equal distances are ordered by neighbor id.
    """

    dist: np.ndarray
    ids: np.ndarray

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def row(self, node: int) -> list[tuple[float, int]]:
        return list(zip(self.dist[node].tolist(), self.ids[node].tolist()))

    def count_within(self, node: int, radius: float) -> int:
        """Number of other nodes at distance <= radius from ``node``."""
        return int(np.searchsorted(self.dist[node], radius, side="right"))

    def range_for_level(self, node: int, k: int) -> float:
        """Largest candidate radius whose coverage count does not exceed k.

        Without distance ties this is the k-th smallest distance in the row.
        With ties at the (k+1)-th position the radius drops to the largest
        distance strictly below the tie, so the count stays <= k.
        """
        n = self.n
        if not 0 <= k <= n - 1:
            raise ValueError(f"level {k} outside [0, {n - 1}]")
        if k == 0:
            return 0.0
        row = self.dist[node]
        if k == n - 1:
            return float(row[-1])
        pos = int(np.searchsorted(row, row[k], side="left"))
        return float(row[pos - 1]) if pos > 0 else 0.0

    def level_radii(self, k: int) -> np.ndarray:
        """``range_for_level(i, k)`` for every node i at once."""
        return np.array([self.range_for_level(i, k) for i in range(self.n)])


def build_table(inst: Instance) -> SortedNeighborTable:
    n = inst.n
    if n < 2:
        raise ValueError("a neighbor table needs at least two nodes")
    d = inst.distance_matrix()
    np.fill_diagonal(d, np.inf)
    order = np.argsort(d, axis=1, kind="stable")[:, : n - 1]
    dist = np.take_along_axis(d, order, axis=1)
    dist.setflags(write=False)
    order.setflags(write=False)
    return SortedNeighborTable(dist=dist, ids=order)


# Random instances. Coordinates come from the PCG64 bit generator's raw 64-bit
# outputs mapped to [0, 1) by their top 53 bits; numpy guarantees bit generator
# streams across versions, unlike Generator's distribution methods.

def _uniform_stream(bitgen: np.random.PCG64, size: int) -> np.ndarray:
    raw = bitgen.random_raw(size)
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def generate_instance(n: int, grid: float = 1000.0, seed: int = 0,
                      source: Optional[int] = None) -> Instance:
    """n points uniform on [0, grid]^2, reproducible for a given seed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not grid > 0 or not math.isfinite(grid):
        raise ValueError("grid must be a positive finite side length")
    bitgen = np.random.PCG64(seed)
    pts = (_uniform_stream(bitgen, 2 * n) * grid).reshape(n, 2)
    seen: set[tuple[float, float]] = set()
    for i in range(n):
        p = (float(pts[i, 0]), float(pts[i, 1]))
        while p in seen:
            p = tuple((_uniform_stream(bitgen, 2) * grid).tolist())
        pts[i] = p
        seen.add(p)
    return Instance(tuple(Point(x, y) for x, y in pts.tolist()), source)


def line_instance(xs: Sequence[float], source: Optional[int] = None) -> Instance:
    """Collinear nodes on the x axis; handy for small hand-checked cases."""
    return Instance(tuple(Point(float(x), 0.0) for x in xs), source)


# Instance file format:
#   n <count>
#   source <id>          (optional)
#   <id> <x> <y>         (n lines, ids 0..n-1 in order)
# Lines starting with '#' are comments.

def format_instance(inst: Instance) -> str:
    lines = [f"n {inst.n}"]
    if inst.source is not None:
        lines.append(f"source {inst.source}")
    lines += [f"{i} {p.x!r} {p.y!r}" for i, p in enumerate(inst.nodes)]
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InstanceError("empty instance file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise InstanceError("first line must be 'n <count>'")
    try:
        n = int(head[1])
    except ValueError:
        raise InstanceError(f"bad node count {head[1]!r}") from None
    if n < 1:
        raise InstanceError("node count must be at least 1")
    body = lines[1:]
    source = None
    if body and body[0].split()[0] == "source":
        parts = body[0].split()
        if len(parts) != 2:
            raise InstanceError("source line must be 'source <id>'")
        try:
            source = int(parts[1])
        except ValueError:
            raise InstanceError(f"bad source id {parts[1]!r}") from None
        body = body[1:]
    if len(body) != n:
        raise InstanceError(f"expected {n} node lines, found {len(body)}")
    nodes = []
    seen = set()
    for expected, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != 3:
            raise InstanceError(f"bad node line {ln!r}")
        try:
            i = int(parts[0])
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise InstanceError(f"bad node line {ln!r}") from None
        if i in seen:
            raise InstanceError(f"duplicate node id {i}")
        if not 0 <= i < n:
            raise InstanceError(f"node id {i} out of range")
        if i != expected:
            raise InstanceError(f"node ids must appear in order; got {i}, expected {expected}")
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InstanceError(f"non-finite coordinate on node {i}")
        seen.add(i)
        nodes.append(Point(x, y))
    return Instance(tuple(nodes), source)


def load_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(format_instance(inst))
