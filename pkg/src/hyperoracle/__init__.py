"""Approximate s-distance oracle for hypergraphs.

Build an index once with :func:`build_oracle`, then answer hyperedge and
vertex s-distance queries and full distance profiles in microseconds.
"""

from .connectivity import SComponents, find_connected_components, s_adjacency
from .hypercore import Hypergraph, load_hypergraph, parse_lines
from .landmarks import AssignmentConfig
from .linegraph import ExactOracle, exact_profile, exact_s_distance
from .oracle import (
    DistanceEstimate,
    Oracle,
    build_oracle,
    estimate_h2h,
    estimate_v2e,
    estimate_v2v,
    load_oracle,
    profile_h2h,
    profile_v2v,
    save_oracle,
)

__version__ = "0.1.0"
