from __future__ import annotations

import math
from dataclasses import dataclass, field

STRATEGIES = ("sampling", "rankagg")
SELECTIONS = ("random", "degree", "farthest", "bestcover", "betweenness")


@dataclass
class AssignmentConfig:
    """Budget and strategy knobs for landmark assignment and selection.

    Exactly one of ``budget_q`` (stored distance pairs) or ``budget_l``
    (pairs per hyperedge, so ``Q = l * |E|``) should be set.
    """

    budget_q: int | None = None
    budget_l: float | None = None
    d_min: int = 4
    alpha: float = 0.2
    beta: float = 0.6
    strategy: str = "sampling"
    selection: str = "degree"
    seed: int = 0
    pair_sample_fraction: float = 0.40

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.budget_q is not None and self.budget_l is not None:
            raise ValueError("set either budget_q or budget_l, not both")
        if self.budget_q is not None and self.budget_q < 0:
            raise ValueError("budget_q must be >= 0")
        if self.budget_l is not None and self.budget_l < 0:
            raise ValueError("budget_l must be >= 0")
        if not 2 <= self.d_min <= 5:
            raise ValueError("d_min must lie in [2, 5]")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if self.strategy == "sampling" and self.alpha + self.beta > 1 + 1e-12:
            raise ValueError("sampling needs alpha + beta <= 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown assignment strategy {self.strategy!r}")
        if self.selection not in SELECTIONS:
            raise ValueError(f"unknown selection strategy {self.selection!r}")
        if not 0 < self.pair_sample_fraction <= 1:
            raise ValueError("pair_sample_fraction must lie in (0, 1]")

    def budget(self, n_edges: int) -> int:
        if self.budget_q is not None:
            return int(self.budget_q)
        if self.budget_l is not None:
            return int(math.ceil(self.budget_l * n_edges))
        return 30 * n_edges


@dataclass
class ComponentRef:
    s: int
    comp_id: int
    size: int
    n_vertices: int
    members: tuple[int, ...] = field(repr=False, default=())
    assigned: int = 0

    @property
    def key(self) -> tuple[int, int]:
        return (self.s, self.comp_id)

    @property
    def saturated(self) -> bool:
        return self.assigned >= self.size
