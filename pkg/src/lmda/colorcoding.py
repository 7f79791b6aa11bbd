"""Randomized search for a connected locally minimal alliance of size exactly k.

Each trial colours every vertex green or red uniformly at random and looks for
a green connected component of size k that is itself a connected locally
minimal defensive alliance.  A hit is always correct; a miss proves nothing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, connected_components
from .kernel import Kind, is_locally_minimal

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class Coloring:
    green: tuple[bool, ...]

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Coloring:
        return cls(tuple(bool(mask >> v & 1) for v in range(n)))

    def green_vertices(self) -> list[int]:
        return [v for v, g in enumerate(self.green) if g]


def theoretical_trials(k: int) -> int:
    return 2 ** (k * k + k)


def success_bound(k: int) -> float:
    """Per-trial lower bound on the hit probability for a yes-instance."""
    return 1.0 / theoretical_trials(k)


@dataclass(frozen=True)
class TrialPolicy:
    seed: int = DEFAULT_SEED
    max_trials: int = 20_000

    def __post_init__(self):
        if self.max_trials < 1:
            raise ValueError("max_trials must be at least 1")

    def budget(self, k: int) -> int:
        return min(self.max_trials, theoretical_trials(k))


def check_coloring(g: Graph, chi: Coloring, k: int) -> frozenset[int] | None:
    """Green component of size k that is a connected locally minimal alliance, if any.

    Components are scanned largest first; among qualifying ones the one with
    the smallest sorted member tuple is returned.
    """
    if len(chi.green) != g.n:
        raise ValueError("colouring does not cover the graph")
    comps = connected_components(g, chi.green_vertices())
    comps.sort(key=len, reverse=True)
    hits = [
        c for c in comps
        if len(c) == k and is_locally_minimal(g, c, Kind.ORDINARY, connected_variant=True)
    ]
    if not hits:
        return None
    return min(hits, key=sorted)


def trial_coloring(n: int, seed: int, i: int) -> Coloring:
    # the stream depends on (seed, i) only, so trials can run in any order
    rng = np.random.default_rng((seed, i))
    return Coloring(tuple(bool(b) for b in rng.integers(0, 2, size=n)))


@dataclass
class ColorCodingResult:
    witness: frozenset[int] | None
    trials_used: int
    theoretical_trials: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def solve(g: Graph, k: int, policy: TrialPolicy = TrialPolicy()) -> ColorCodingResult:
    if k < 1:
        raise ValueError("k must be at least 1")
    total = theoretical_trials(k)
    if k > g.n:
        return ColorCodingResult(None, 0, total)
    budget = policy.budget(k)
    for i in range(budget):
        hit = check_coloring(g, trial_coloring(g.n, policy.seed, i), k)
        if hit is not None:
            assert len(hit) == k
            assert is_locally_minimal(g, hit, Kind.ORDINARY, connected_variant=True)
            return ColorCodingResult(hit, i + 1, total)
    return ColorCodingResult(None, budget, total)


def exact_hit_ratio(g: Graph, k: int) -> float:
    """Fraction of all 2^n colourings on which ``check_coloring`` succeeds."""
    hits = sum(check_coloring(g, Coloring.from_mask(g.n, m), k) is not None for m in range(1 << g.n))
    return hits / (1 << g.n)
