import pytest

from topoctl.algorithms import Infeasible
from topoctl.core import build_table, generate_instance, line_instance
from topoctl.oracles import (exhaustive_min_total, mmsi_linear_scan,
                             uniform_level_radii)
from topoctl.predicates import Broadcast, KEdgeConnectivity, StrongConnectivity, TSpanner


def test_linear_scan_line(line3):
    assert mmsi_linear_scan(line3, StrongConnectivity()).level == 2


@pytest.mark.parametrize("p", [StrongConnectivity(), Broadcast(1), KEdgeConnectivity(1),
                               TSpanner(3.0)], ids=str)
def test_linear_scan_two_nodes(p):
    assert mmsi_linear_scan(line_instance([0, 1]), p).level == 1


def test_linear_scan_infeasible():
    with pytest.raises(Infeasible):
        mmsi_linear_scan(line_instance([0, 1, 2, 3]), KEdgeConnectivity(5))


def test_linear_scan_cap():
    with pytest.raises(ValueError):
        mmsi_linear_scan(generate_instance(65, 1000, 0), StrongConnectivity())


def test_uniform_radii_match_table():
    inst = generate_instance(10, 1000, 3)
    t = build_table(inst)
    for k in range(10):
        assert uniform_level_radii(inst, k).tolist() == t.level_radii(k).tolist()


def test_exhaustive_line(line3):
    assert exhaustive_min_total(line3, Broadcast(0)).total == 2
    assert exhaustive_min_total(line3, StrongConnectivity()).total == 4


def test_exhaustive_single():
    assert exhaustive_min_total(line_instance([1]), StrongConnectivity()).total == 0


def test_exhaustive_cap():
    with pytest.raises(ValueError):
        exhaustive_min_total(generate_instance(6, 1000, 0), StrongConnectivity())


def test_exhaustive_generic_predicate(line3):
    # falls back to the library checker; 2-edge connectivity needs everyone to reach both others
    res = exhaustive_min_total(line3, KEdgeConnectivity(2))
    assert res.total == 6


@pytest.mark.parametrize("seed", range(10))
def test_broadcast_lower_bound(seed):
    inst = generate_instance(1 + seed % 5, 1000, seed)
    for s in range(inst.n):
        assert exhaustive_min_total(inst, Broadcast(s)).total == inst.n - 1


@pytest.mark.parametrize("seed", range(10))
def test_strong_needs_n_edges(seed):
    # every node needs an out-edge once n >= 2
    inst = generate_instance(2 + seed % 4, 1000, seed)
    assert exhaustive_min_total(inst, StrongConnectivity()).total >= inst.n
