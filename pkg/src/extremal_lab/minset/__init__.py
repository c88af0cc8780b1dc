"""Minimal condenser capacity cuts and their quadratic differentials."""

from .quaddiff import (
    geodesic_arc,
    moebius,
    pole_direction,
    qd_evaluate,
    residue_at,
    zero_coefficient,
    zero_directions,
)
from .solver import build_cut, optimize_topology, solve_minimal_set, stage1_search, trace_cut
from .sproperty import h_squared_diagnostic, s_property_check
from .topology import full_steiner_topologies, interchange_neighbours, spanning_topology
from .trajectory import trace_from_a_point, trace_from_b_point, trace_negative_trajectory

__all__ = [
    "build_cut",
    "full_steiner_topologies",
    "geodesic_arc",
    "h_squared_diagnostic",
    "interchange_neighbours",
    "moebius",
    "optimize_topology",
    "pole_direction",
    "qd_evaluate",
    "residue_at",
    "s_property_check",
    "solve_minimal_set",
    "spanning_topology",
    "stage1_search",
    "trace_cut",
    "trace_from_a_point",
    "trace_from_b_point",
    "trace_negative_trajectory",
    "zero_coefficient",
    "zero_directions",
]
