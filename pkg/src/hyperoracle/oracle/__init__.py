from .avgdist import UnsupportedSizeError, approx_avg_dist, avg_dist_table, topology_table
from .core import (
    BOUNDED,
    DISCONNECTED,
    EXACT,
    SMALL,
    UNCOVERED,
    DistanceEstimate,
    DistanceProfile,
    Oracle,
    build_oracle,
    estimate_from,
    estimate_h2h,
    estimate_v2e,
    estimate_v2v,
    profile_h2h,
    profile_v2v,
)
from .io import OracleFormatError, dumps, load_oracle, loads, save_oracle
from .recommend import top_k_neighbors
