"""Interference-aware range assignment for 2D sensor networks."""

from .algorithms import (Infeasible, MmsiResult, TotalResult, heuristic_strong_total,
                         mmsi, mst_baseline, mtsi_broadcast)
from .core import (Instance, InstanceError, Point, RangeAssignment, SortedNeighborTable,
                   build_table, distance, generate_instance, line_instance,
                   load_instance, save_instance)
from .graph import CommGraph, InterferenceReport, build_graph, interference
from .predicates import (Broadcast, KEdgeConnectivity, KVertexConnectivity,
                         StrongConnectivity, TSpanner, check, parse_predicate)

__version__ = "0.1.0"
