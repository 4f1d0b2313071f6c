"""Hypergraph storage, file ingestion and s-neighbourhood primitives.

Vertices and hyperedges are identified by dense integers assigned in
first-seen order.  ``Hypergraph.vertex_tokens`` keeps the original tokens so
ids can be mapped back when writing results.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from numbers import Integral
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

_SPLIT = re.compile(r"[\s,]+")


class HypergraphParseError(ValueError):
    """Raised when an input line cannot be turned into a hyperedge."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class EdgeSizeIndex:
    """Hyperedges ordered by decreasing size with per-threshold offsets.

    ``at_least(i)`` returns the ids of ``E_i`` (hyperedges with ``|e| >= i``)
    as a prefix of the size-descending order.
    """

    order: tuple[int, ...]
    offsets: dict[int, int]
    max_size: int

    @classmethod
    def build(cls, sizes: Sequence[int]) -> "EdgeSizeIndex":
        order = tuple(sorted(range(len(sizes)), key=lambda e: (-sizes[e], e)))
        max_size = max(sizes, default=0)
        offsets = {}
        pos = 0
        for i in range(max_size + 1, 0, -1):
            while pos < len(order) and sizes[order[pos]] >= i:
                pos += 1
            offsets[i] = pos
        return cls(order, offsets, max_size)

    def at_least(self, i: int) -> tuple[int, ...]:
        if i > self.max_size:
            return ()
        return self.order[: self.offsets[max(i, 1)]]


@dataclass
class Hypergraph:
    """Undirected hypergraph with a vertex -> hyperedges incidence index.

    Treat instances as immutable once constructed.
    """

    edges: list[tuple[int, ...]]
    vertex_tokens: list[str] = field(default_factory=list)
    incidence: list[list[int]] = field(default_factory=list)
    edge_sets: list[frozenset] = field(default_factory=list, repr=False)

    def __post_init__(self):
        n_vertices = 1 + max((v for e in self.edges for v in e), default=-1)
        if not self.vertex_tokens:
            self.vertex_tokens = [str(v) for v in range(n_vertices)]
        if len(self.vertex_tokens) < n_vertices:
            raise ValueError("vertex_tokens shorter than the vertex id range")
        for i, e in enumerate(self.edges):
            if len(e) < 2:
                raise ValueError(f"hyperedge {i} has fewer than 2 vertices")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise ValueError(f"hyperedge {i} is not strictly sorted")
        if not self.incidence:
            self.incidence = build_incidence(self.edges, len(self.vertex_tokens))
        self.edge_sets = [frozenset(e) for e in self.edges]
        self._token_index = {t: i for i, t in enumerate(self.vertex_tokens)}
        self._size_index = EdgeSizeIndex.build([len(e) for e in self.edges])

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable], dedupe: bool = False) -> "Hypergraph":
        """Build from an iterable of vertex-token collections."""
        token_ids: dict[str, int] = {}
        out = []
        seen = set()
        for raw in edges:
            ids = set()
            for tok in raw:
                tok = str(tok)
                if tok not in token_ids:
                    token_ids[tok] = len(token_ids)
                ids.add(token_ids[tok])
            e = tuple(sorted(ids))
            if len(e) < 2:
                raise ValueError(f"hyperedge {list(raw)!r} has fewer than 2 distinct vertices")
            if dedupe:
                if e in seen:
                    continue
                seen.add(e)
            out.append(e)
        return cls(out, list(token_ids))

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_tokens)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def size_index(self) -> EdgeSizeIndex:
        return self._size_index

    def size(self, e: int) -> int:
        return len(self.edges[e])

    def max_edge_size(self) -> int:
        return self._size_index.max_size

    def edges_at_least(self, i: int) -> tuple[int, ...]:
        return self._size_index.at_least(i)

    def vertex_id(self, token: str) -> int:
        try:
            return self._token_index[token]
        except KeyError:
            raise KeyError(f"unknown vertex token {token!r}") from None

    def check_edge(self, e: int) -> None:
        if isinstance(e, bool) or not isinstance(e, Integral) or not 0 <= e < len(self.edges):
            raise ValueError(f"invalid hyperedge id {e!r}")

    def check_vertex(self, v: int) -> None:
        if isinstance(v, bool) or not isinstance(v, Integral) or not 0 <= v < len(self.vertex_tokens):
            raise ValueError(f"invalid vertex id {v!r}")

    def overlap(self, e: int, f: int) -> int:
        a, b = self.edge_sets[e], self.edge_sets[f]
        if len(a) > len(b):
            a, b = b, a
        return sum(1 for v in a if v in b)


def build_incidence(edges: Sequence[Sequence[int]], n_vertices: int) -> list[list[int]]:
    incidence: list[list[int]] = [[] for _ in range(n_vertices)]
    for i, e in enumerate(edges):
        for v in e:
            incidence[v].append(i)
    return incidence


def parse_lines(lines: Iterable[str], dedupe: bool = False) -> Hypergraph:
    raw = []
    for line_no, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t for t in _SPLIT.split(line) if t]
        if len(set(tokens)) < 2:
            raise HypergraphParseError(line_no, f"hyperedge needs at least 2 distinct vertices, got {line!r}")
        raw.append(tokens)
    if dedupe:
        before = len(raw)
        h = Hypergraph.from_edges(raw, dedupe=True)
        if before != h.n_edges:
            log.info("dedupe collapsed %d duplicate hyperedges", before - h.n_edges)
        return h
    return Hypergraph.from_edges(raw)


def load_hypergraph(path, dedupe: bool = False) -> Hypergraph:
    """Read a hypergraph file: one hyperedge per line, tokens split on
    whitespace or commas, ``#`` lines ignored."""
    with open(path, encoding="utf-8") as fh:
        return parse_lines(fh, dedupe=dedupe)


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in h.edges:
            fh.write(" ".join(h.vertex_tokens[v] for v in e) + "\n")


def write_id_map(h: Hypergraph, path) -> None:
    """Persist ``vertex_id TAB token`` so dense ids can be mapped back."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, tok in enumerate(h.vertex_tokens):
            fh.write(f"{i}\t{tok}\n")


def read_id_map(path) -> list[str]:
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh):
            idx, tok = line.rstrip("\n").split("\t", 1)
            if int(idx) != i:
                raise ValueError(f"id map not dense at line {i + 1}")
            tokens.append(tok)
    return tokens


def load_labels(path) -> dict[str, str]:
    """Read a ``token TAB label`` file into a dict."""
    labels = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{line_no}: expected 'id<TAB>label'")
            labels[parts[0]] = parts[1]
    return labels


def overlap_counts(h: Hypergraph, e: int) -> Counter:
    """Overlap size of ``e`` with every hyperedge that shares a vertex."""
    counts: Counter = Counter()
    for v in h.edges[e]:
        counts.update(h.incidence[v])
    del counts[e]
    return counts


def s_neighbors(h: Hypergraph, e: int, s: int) -> set[int]:
    """Hyperedges sharing at least ``s`` vertices with ``e``."""
    if len(h.edges[e]) < s:
        return set()
    return {f for f, c in overlap_counts(h, e).items() if c >= s}


def s_degree(h: Hypergraph, e: int, s: int) -> int:
    return len(s_neighbors(h, e, s))


def pairwise_overlaps(h: Hypergraph) -> dict[tuple[int, int], int]:
    """``|e ∩ f|`` for every overlapping pair ``e < f``, via posting lists."""
    counts: Counter = Counter()
    for plist in h.incidence:
        n = len(plist)
        for i in range(n):
            a = plist[i]
            for j in range(i + 1, n):
                counts[(a, plist[j])] += 1
    return dict(counts)
