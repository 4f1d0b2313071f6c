from .centrality import (
    CentralityReport,
    CentralityRow,
    UndefinedCentrality,
    centrality_report,
    s_closeness,
    vertex_s_closeness,
)
from .metrics import ErrorRatios, EvalReport, avep_at_k, evaluate, mape_lar
from .queries import KINDS, Query, QueryBatch, read_pairs, sample_queries, write_batch
