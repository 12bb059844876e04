"""Monte Carlo and discrepancy studies. Logarithms are base 2 throughout."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import GraphError, SizeLimitError
from .generators import (
    DEFAULT_DISCREPANCY_CAP,
    disjoint_interval_gap_free,
    interval_discrepancy,
    random_matching,
    vdc_permutation,
)

DEFAULT_MC_BUDGET = 10**7  # n * trials


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (95% by default)."""
    if trials == 0:
        return 0.0, 1.0
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


def jumbled_threshold(n: int) -> int:
    """ceil(4 sqrt(n log n)), rounded up to an even number."""
    if n < 2:
        return 0
    t = math.ceil(4 * math.sqrt(n * math.log2(n)))
    return t + (t % 2)


@dataclass(frozen=True)
class McReport:
    n: int
    trials: int
    seed: int | None
    threshold: int
    successes: int
    fraction: float
    wilson_low: float
    wilson_high: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def mc_jumbled(n: int, trials: int, seed: int | None = None, budget: int = DEFAULT_MC_BUDGET) -> McReport:
    """Share of random matchings on [n] with an edge between every two disjoint
    intervals of the threshold length."""
    if n % 2 or n < 2:
        raise GraphError("n must be a positive even number")
    if n * trials > budget:
        raise SizeLimitError(f"n * trials = {n * trials} exceeds budget {budget}")
    rng = np.random.default_rng(seed)
    L = jumbled_threshold(n)
    hits = 0
    for _ in range(trials):
        m = random_matching(n, rng=rng)
        if disjoint_interval_gap_free(m, L):
            hits += 1
    lo, hi = wilson_interval(hits, trials)
    return McReport(n, trials, seed, L, hits, hits / trials if trials else 0.0, lo, hi)


@dataclass(frozen=True)
class DiscrepancyRow:
    h: int
    n: int
    discrepancy: Fraction
    ratio: Fraction  # discrepancy / log2 n = discrepancy / h


def mc_discrepancy(h_values, cap: int = DEFAULT_DISCREPANCY_CAP) -> tuple[list[DiscrepancyRow], Fraction]:
    """Interval discrepancy of bit-reversal permutations and the fitted constant."""
    rows = []
    for h in h_values:
        if 2**h > cap:
            raise SizeLimitError(f"2^{h} exceeds discrepancy cap {cap}")
        disc = interval_discrepancy(vdc_permutation(h), cap)
        rows.append(DiscrepancyRow(h, 2**h, disc, disc / h))
    c_hat = max((r.ratio for r in rows), default=Fraction(0))
    return rows, c_hat
