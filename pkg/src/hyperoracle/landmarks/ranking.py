"""Rank aggregation with ties.

Rankings are sequences of buckets; elements in one bucket are tied.  The
distance between two rankings is the generalized Kendall tau with tie
penalty ``p``; the consensus minimises the weighted sum of those distances
(weighted Kemeny score) by local search.

Internally every ranking is a vector of bucket positions, and the weighted
inputs collapse into two pairwise cost matrices:

* ``before[x, y]``: cost of placing ``x`` strictly ahead of ``y``
* ``tied[x, y]``: cost of putting ``x`` and ``y`` in the same bucket
"""

from __future__ import annotations

from itertools import product
from typing import Hashable, Iterable, Sequence

import numpy as np

TIE_PENALTY = 0.5
MAX_PASSES = 20
_EPS = 1e-9


class TiedRanking:
    """Immutable ordered sequence of disjoint buckets."""

    __slots__ = ("buckets",)

    def __init__(self, buckets: Iterable[Iterable[Hashable]]):
        out = []
        seen = set()
        for b in buckets:
            fb = frozenset(b)
            if not fb:
                continue
            if fb & seen:
                raise ValueError("buckets of a tied ranking must be disjoint")
            seen |= fb
            out.append(fb)
        self.buckets = tuple(out)

    @classmethod
    def by_key(cls, items: Iterable[Hashable], key, reverse: bool = False) -> "TiedRanking":
        """Group items with equal ``key`` into one bucket, ordered by key."""
        groups: dict = {}
        for it in items:
            groups.setdefault(key(it), []).append(it)
        return cls(groups[k] for k in sorted(groups, reverse=reverse))

    @classmethod
    def from_positions(cls, elements: Sequence[Hashable], positions) -> "TiedRanking":
        groups: dict = {}
        for el, pos in zip(elements, positions):
            groups.setdefault(int(pos), []).append(el)
        return cls(groups[k] for k in sorted(groups))

    def universe(self) -> frozenset:
        return frozenset().union(*self.buckets)

    def positions(self) -> dict:
        return {el: i for i, b in enumerate(self.buckets) for el in b}

    def first(self) -> frozenset:
        return self.buckets[0] if self.buckets else frozenset()

    def without(self, element) -> "TiedRanking":
        return TiedRanking(b - {element} for b in self.buckets)

    def __len__(self) -> int:
        return sum(len(b) for b in self.buckets)

    def __eq__(self, other) -> bool:
        return isinstance(other, TiedRanking) and self.buckets == other.buckets

    def __hash__(self) -> int:
        return hash(self.buckets)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ", ".join(sorted(map(repr, b))) + "}" for b in self.buckets)
        return f"TiedRanking([{inner}])"


def _position_vector(r: TiedRanking, elements: Sequence[Hashable]) -> np.ndarray:
    pos = r.positions()
    try:
        return np.array([pos[el] for el in elements], dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"ranking does not cover element {exc.args[0]!r}") from None


def _check_universe(rankings: Sequence[TiedRanking]) -> list:
    universe = rankings[0].universe()
    for r in rankings[1:]:
        if r.universe() != universe:
            raise ValueError("rankings are over different element sets")
    return sorted(universe)


def kendall_tau_ties(a: TiedRanking, b: TiedRanking, p: float = TIE_PENALTY) -> float:
    """Generalized Kendall tau: 1 per opposite pair, ``p`` per pair tied in one only."""
    elements = _check_universe([a, b])
    n = len(elements)
    if n < 2:
        return 0.0
    pa, pb = _position_vector(a, elements), _position_vector(b, elements)
    iu = np.triu_indices(n, 1)
    sa = np.sign(pa[:, None] - pa[None, :])[iu]
    sb = np.sign(pb[:, None] - pb[None, :])[iu]
    cost = np.where(sa == sb, 0.0, np.where((sa == 0) | (sb == 0), p, 1.0))
    return float(cost.sum())


def kemeny_score(pi: TiedRanking, Pi: Sequence[tuple[TiedRanking, float]], p: float = TIE_PENALTY) -> float:
    return float(sum(w * kendall_tau_ties(r, pi, p) for r, w in Pi))


def pairwise_costs(pos: np.ndarray, weight: float, p: float = TIE_PENALTY) -> tuple[np.ndarray, np.ndarray]:
    """Cost matrices contributed by one input ranking (positions vector)."""
    ahead = pos[:, None] < pos[None, :]
    behind = pos[:, None] > pos[None, :]
    same = ~(ahead | behind)
    before = weight * (behind + p * same)
    tied = weight * p * (~same)
    return before, tied


def score_positions(q: np.ndarray, before: np.ndarray, tied: np.ndarray) -> float:
    ahead = q[:, None] < q[None, :]
    same = q[:, None] == q[None, :]
    np.fill_diagonal(same, False)
    return float(before[ahead].sum() + tied[same].sum() / 2)


def dense_ranks(q: np.ndarray) -> np.ndarray:
    _, inv = np.unique(q, return_inverse=True)
    return inv.astype(np.int64)


def local_search(q: np.ndarray, before: np.ndarray, tied: np.ndarray,
                 max_passes: int = MAX_PASSES) -> np.ndarray:
    """Move single elements to the best bucket (existing or new) until stable.

    Elements are scanned in index order and each move is applied as soon as
    it strictly lowers the score.
    """
    q = dense_ranks(q.copy())
    n = len(q)
    if n < 2:
        return q
    idx = np.arange(n)
    for _ in range(max_passes):
        improved = False
        for x in range(n):
            others = idx != x
            b = q[others]
            alone = not np.any(b == q[x])
            if alone:
                b = np.where(b > q[x], b - 1, b)
            k = int(b.max()) + 1 if len(b) else 0
            cost_y_first = np.bincount(b, weights=before[others, x], minlength=k)
            cost_x_first = np.bincount(b, weights=before[x, others], minlength=k)
            cost_tie = np.bincount(b, weights=tied[x, others], minlength=k)
            lead = np.concatenate(([0.0], np.cumsum(cost_y_first)))
            tail = cost_x_first.sum() - np.concatenate(([0.0], np.cumsum(cost_x_first)))
            gap_cost = lead + tail                                # new bucket before bucket g
            join_cost = lead[:-1] + cost_tie + tail[1:]           # join bucket j
            if alone:
                current = gap_cost[q[x]]
            else:
                current = join_cost[q[x]]
            # candidates interleaved by position: gap 0, bucket 0, gap 1, ...
            cand = np.empty(2 * k + 1)
            cand[0::2] = gap_cost
            cand[1::2] = join_cost
            best = int(np.argmin(cand))
            if cand[best] < current - _EPS:
                improved = True
                if best % 2 == 0:
                    g = best // 2
                    q[others] = np.where(b >= g, b + 1, b)
                    q[x] = g
                else:
                    q[others] = b
                    q[x] = best // 2
        if not improved:
            break
    return q


def consensus_positions(starts: Sequence[np.ndarray], before: np.ndarray, tied: np.ndarray,
                        max_passes: int = MAX_PASSES) -> tuple[np.ndarray, float]:
    best_q, best_score = None, np.inf
    for start in starts:
        q = local_search(start, before, tied, max_passes)
        sc = score_positions(q, before, tied)
        if sc < best_score - _EPS:
            best_q, best_score = q, sc
    return best_q, best_score


def consensus_ranking(Pi: Sequence[tuple[TiedRanking, float]], p: float = TIE_PENALTY,
                      max_passes: int = MAX_PASSES) -> TiedRanking:
    """Approximate Kemeny consensus, seeded from every input ranking."""
    if not Pi:
        raise ValueError("need at least one input ranking")
    elements = _check_universe([r for r, _ in Pi])
    n = len(elements)
    before = np.zeros((n, n))
    tied = np.zeros((n, n))
    starts = []
    for r, w in Pi:
        pos = _position_vector(r, elements)
        b, t = pairwise_costs(pos, w, p)
        before += b
        tied += t
        starts.append(pos)
    q, _ = consensus_positions(starts, before, tied, max_passes)
    return TiedRanking.from_positions(elements, q)


def all_tied_rankings(elements: Sequence[Hashable]) -> list[TiedRanking]:
    """Every weak order of ``elements`` (13 for three elements)."""
    n = len(elements)
    seen = set()
    out = []
    for assign in product(range(n), repeat=n):
        q = tuple(dense_ranks(np.array(assign)))
        if q in seen:
            continue
        seen.add(q)
        out.append(TiedRanking.from_positions(elements, q))
    return out
