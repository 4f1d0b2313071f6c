"""Seeded random hypergraph generators used by tests, benchmarks and the CLI."""

from __future__ import annotations

import numpy as np

from .hypercore import Hypergraph


def random_hypergraph(n_vertices: int, n_edges: int, min_size: int = 2,
                      max_size: int = 8, seed: int = 0) -> Hypergraph:
    """Uniform sizes in ``[min_size, max_size]``, uniform vertex choice."""
    rng = np.random.default_rng(seed)
    max_size = min(max_size, n_vertices)
    edges = []
    for _ in range(n_edges):
        k = int(rng.integers(min_size, max_size + 1))
        edges.append(sorted(int(v) for v in rng.choice(n_vertices, size=k, replace=False)))
    return Hypergraph.from_edges(edges)


def powerlaw_hypergraph(n_edges: int, n_vertices: int | None = None,
                        size_exponent: float = 2.5, max_size: int = 20,
                        popularity_exponent: float = 1.0, seed: int = 0) -> Hypergraph:
    """Hyperedge sizes drawn from a truncated power law on ``[2, max_size]``.

    Vertices are picked with Zipf-like popularity so that popular vertices
    co-occur often and higher-order overlaps (s >= 2) actually appear.
    """
    rng = np.random.default_rng(seed)
    if n_vertices is None:
        n_vertices = n_edges
    sizes = np.arange(2, max_size + 1)
    p_size = sizes.astype(float) ** -size_exponent
    p_size /= p_size.sum()
    pop = np.arange(1, n_vertices + 1, dtype=float) ** -popularity_exponent
    pop /= pop.sum()
    perm = rng.permutation(n_vertices)
    edges = []
    for _ in range(n_edges):
        k = int(min(rng.choice(sizes, p=p_size), n_vertices))
        picked = rng.choice(n_vertices, size=k, replace=False, p=pop)
        edges.append(sorted(int(perm[v]) for v in picked))
    return Hypergraph.from_edges(edges)


def toy_hypergraph() -> Hypergraph:
    """The five-edge fixture used throughout the docs and tests."""
    return Hypergraph.from_edges([
        ["1", "2"],
        ["2", "3", "4"],
        ["3", "4", "5"],
        ["4", "5", "6", "7"],
        ["7", "8"],
    ])
