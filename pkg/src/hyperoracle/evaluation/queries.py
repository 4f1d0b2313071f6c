from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..connectivity import SComponents
from ..hypercore import Hypergraph

KINDS = ("hh", "vv", "ve")


@dataclass(frozen=True)
class Query:
    source: int
    target: int
    kind: str
    s: int


@dataclass
class QueryBatch:
    queries: list[Query]
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.queries)

    def __iter__(self):
        return iter(self.queries)


def _as_kind(h: Hypergraph, e: int, f: int, kind: str, rng: random.Random) -> tuple[int, int]:
    if kind == "hh":
        return e, f
    u = rng.choice(h.edges[e])
    if kind == "ve":
        return u, f
    return u, rng.choice(h.edges[f])


def sample_queries(h: Hypergraph, cc: SComponents, per_s: int, cross_frac: float = 0.1,
                   seed: int = 0, kind: str = "hh", s_values=None) -> QueryBatch:
    """Stratified query sample: ``per_s`` queries for every level s.

    Same-component pairs pick a component with probability proportional to
    its number of member pairs; a ``cross_frac`` share of each stratum pairs
    hyperedges from different components.  Vertex kinds map each sampled
    hyperedge to one of its vertices.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if not 0 <= cross_frac <= 1:
        raise ValueError("cross_frac must lie in [0, 1]")
    rng = random.Random(seed)
    s_values = list(s_values or range(1, cc.s_max + 1))
    queries = []
    same_available = {}
    shortfall = {}
    for s in s_values:
        lvl = cc.level(s)
        n_cross = round(cross_frac * per_s)
        n_same = per_s - n_cross
        multi = [c for c in range(lvl.n_components) if lvl.sizes[c] >= 2]
        weights = [lvl.sizes[c] * (lvl.sizes[c] - 1) // 2 for c in multi]
        same_available[s] = sum(weights)
        got = 0
        if multi:
            for _ in range(n_same):
                c = rng.choices(multi, weights)[0]
                e, f = rng.sample(lvl.members[c], 2)
                queries.append(Query(*_as_kind(h, e, f, kind, rng), kind, s))
                got += 1
        if lvl.n_components >= 2:
            pool = sorted(lvl.comp_of)
            for _ in range(n_cross):
                for _attempt in range(100):
                    e, f = rng.sample(pool, 2)
                    if lvl.comp_of[e] != lvl.comp_of[f]:
                        queries.append(Query(*_as_kind(h, e, f, kind, rng), kind, s))
                        got += 1
                        break
        if got < per_s:
            shortfall[s] = per_s - got
    provenance = {
        "sampler": "stratified",
        "per_s": per_s,
        "cross_frac": cross_frac,
        "seed": seed,
        "kind": kind,
        "same_component_pairs": same_available,
        "shortfall": shortfall,
    }
    return QueryBatch(queries, provenance)


def read_pairs(path) -> list[tuple[str, str, int | None]]:
    """``src TAB dst [TAB s]`` token rows; blank and ``#`` lines are skipped."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) not in (2, 3):
                raise ValueError(f"{path}:{line_no}: expected 'src<TAB>dst[<TAB>s]'")
            s = None
            if len(parts) == 3:
                try:
                    s = int(parts[2])
                except ValueError:
                    raise ValueError(f"{path}:{line_no}: s must be an integer") from None
            pairs.append((parts[0], parts[1], s))
    return pairs


def write_batch(batch: QueryBatch, h: Hypergraph, path) -> None:
    """Write ``src TAB dst TAB s`` with vertex tokens and hyperedge line ids."""
    with open(path, "w", encoding="utf-8") as fh:
        for q in batch:
            src = h.vertex_tokens[q.source] if q.kind in ("vv", "ve") else str(q.source)
            dst = h.vertex_tokens[q.target] if q.kind == "vv" else str(q.target)
            fh.write(f"{src}\t{dst}\t{q.s}\n")
