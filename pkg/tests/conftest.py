import numpy as np
import pytest

from topoctl.core import generate_instance, line_instance
from topoctl.graph import CommGraph


@pytest.fixture
def line3():
    """Nodes at x = 0, 1, 3."""
    return line_instance([0, 1, 3])


def random_graph(n, density, rng):
    adj = rng.random((n, n)) < density
    np.fill_diagonal(adj, False)
    return CommGraph(adj)


def random_supergraph(g, rng, extra=0.2):
    add = rng.random(g.adj.shape) < extra
    return CommGraph(g.adj | add)


def random_assignment(inst, rng, saturation=0.5):
    """Radii drawn mostly from each node's candidate set, sometimes in between."""
    d = inst.distance_matrix()
    n = inst.n
    radii = np.zeros(n)
    for u in range(n):
        if n == 1 or rng.random() < 0.15:
            continue
        cands = np.sort(d[u][np.arange(n) != u])
        j = int(rng.integers(0, max(1, int(len(cands) * saturation)) + 1))
        j = min(j, len(cands) - 1)
        radii[u] = cands[j] if rng.random() < 0.8 else cands[j] * rng.uniform(0.5, 1.0)
    return radii


def instances(count, n_lo, n_hi, seed=0):
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        yield generate_instance(n, 1000.0, seed * 100_003 + i)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
