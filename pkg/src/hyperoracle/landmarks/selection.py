"""Pick the next landmark inside one s-connected component."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from ..connectivity import SAdjacency
from ..linegraph import bfs_distances, bfs_tree
from .config import ComponentRef


class ComponentSaturated(RuntimeError):
    """Every member of the component is already a landmark."""


@dataclass
class PathPool:
    """One shortest s-path per sampled member pair."""

    paths: list[frozenset] = field(default_factory=list)
    hits: dict[int, list[int]] = field(default_factory=dict)  # hyperedge -> path indices

    @classmethod
    def sample(cls, comp: ComponentRef, adj: SAdjacency, fraction: float,
               rng: random.Random) -> "PathPool":
        members = sorted(comp.members)
        k = min(len(members), max(2, math.ceil(fraction * len(members))))
        sampled = sorted(rng.sample(members, k))
        pool = cls()
        for i, a in enumerate(sampled[:-1]):
            _, parent = bfs_tree(adj, a)
            for b in sampled[i + 1:]:
                if b not in parent:
                    continue
                path = [b]
                while path[-1] != a:
                    path.append(parent[path[-1]])
                pid = len(pool.paths)
                pool.paths.append(frozenset(path))
                for x in path:
                    pool.hits.setdefault(x, []).append(pid)
        return pool


def _by_degree(candidates, adj: SAdjacency) -> int:
    return min(candidates, key=lambda e: (-adj.degree(e), e))


def select_landmark(comp: ComponentRef, already: set[int], adj: SAdjacency,
                    selection: str, rng: random.Random, pair_fraction: float = 0.40,
                    cache: dict | None = None) -> int:
    """Return one member of ``comp`` not yet in ``already``.

    ``cache`` keeps per-component state (sampled path pools) across calls.
    Ties break towards the lower hyperedge id; bestcover and betweenness
    fall back to s-degree once no sampled path helps.
    """
    candidates = [e for e in sorted(comp.members) if e not in already]
    if not candidates:
        raise ComponentSaturated(f"component {comp.key} has no free member")
    if selection == "random":
        return rng.choice(candidates)
    if selection == "degree":
        return _by_degree(candidates, adj)
    if selection == "farthest":
        if not already:
            return rng.choice(candidates)
        dist = bfs_distances(adj, sorted(already))
        return min(candidates, key=lambda e: (-dist.get(e, math.inf), e))
    if selection in ("bestcover", "betweenness"):
        cache = {} if cache is None else cache
        pool = cache.get(comp.key)
        if pool is None:
            pool = cache[comp.key] = PathPool.sample(comp, adj, pair_fraction, rng)
        if selection == "bestcover":
            covered = set()
            for l in already:
                covered.update(pool.hits.get(l, ()))
            score = {e: sum(1 for p in pool.hits.get(e, ()) if p not in covered) for e in candidates}
        else:
            score = {e: len(pool.hits.get(e, ())) for e in candidates}
        top = max(score.values())
        if top == 0:
            return _by_degree(candidates, adj)
        return min(candidates, key=lambda e: (-score[e], e))
    raise ValueError(f"unknown selection strategy {selection!r}")
