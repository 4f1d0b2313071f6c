"""Label-filtered k-nearest-neighbour recommendation."""

from __future__ import annotations

import math

from ..hypercore import Hypergraph
from ..linegraph import ExactOracle
from .core import Oracle, estimate_h2h, estimate_v2v


def top_k_neighbors(o: Oracle | None, h: Hypergraph, query: int, kind: str, s: int, k: int,
                    labels: dict[int, str], exact: ExactOracle | None = None) -> list[tuple[int, float]]:
    """Closest same-label entities of the same kind as ``query``.

    ``kind`` is ``"vertex"`` or ``"hyperedge"``; ``labels`` maps entity ids
    to labels.  Unreachable candidates are dropped.  Passing ``exact`` ranks
    by true BFS distances instead of oracle estimates.
    """
    if kind not in ("vertex", "hyperedge"):
        raise ValueError(f"kind must be 'vertex' or 'hyperedge', got {kind!r}")
    label = labels.get(query)
    if label is None:
        return []
    candidates = sorted(x for x, lab in labels.items() if lab == label and x != query)
    scored = []
    for x in candidates:
        if exact is not None:
            d = exact.v2v(query, x, s) if kind == "vertex" else exact.h2h(query, x, s)
        elif kind == "vertex":
            d = estimate_v2v(o, h, query, x, s).estimate
        else:
            d = estimate_h2h(o, query, x, s).estimate
        if not math.isinf(d):
            scored.append((d, x))
    scored.sort()
    return [(x, d) for d, x in scored[:k]]
