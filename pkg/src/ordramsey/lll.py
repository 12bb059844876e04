"""Resampling search for colorings with no blue triangle, no red family member, no red K_k.

Every pair of [m] is an independent variable, blue with probability p_blue.
Bad events come in three classes: P (a blue triangle), Q (a red ordered copy
of a family member) and R (a red K_k). While some event holds, the first
one in a fixed enumeration is resampled: exactly its pairs are redrawn.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import (
    BLUE,
    RED,
    EdgeColoring,
    GraphError,
    OrderedGraph,
    _search,
    find_monochromatic_copy,
    find_monochromatic_triangle,
)
from .generators import complete

DEFAULT_MAX_RESAMPLES = 10**6


@dataclass(frozen=True)
class BadEventFamily:
    m: int
    red_clique_order: int
    p_blue: Fraction
    red_family: tuple[OrderedGraph, ...] = ()
    blue_triangle: bool = True
    seed: int | None = None

    def __init__(
        self,
        m: int,
        red_clique_order: int,
        p_blue,
        red_family: Sequence[OrderedGraph] = (),
        blue_triangle: bool = True,
        seed: int | None = None,
    ):
        p = Fraction(str(p_blue)) if isinstance(p_blue, float) else Fraction(p_blue)
        if not 0 <= p <= 1:
            raise GraphError(f"p_blue must lie in [0, 1], got {p}")
        if red_clique_order < 2:
            raise GraphError("red clique order must be at least 2")
        if m < 1:
            raise GraphError("need at least one vertex")
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "red_clique_order", int(red_clique_order))
        object.__setattr__(self, "p_blue", p)
        object.__setattr__(self, "red_family", tuple(red_family))
        object.__setattr__(self, "blue_triangle", bool(blue_triangle))
        object.__setattr__(self, "seed", seed)


class ResampleCapExceeded(RuntimeError):
    def __init__(self, resamples: int, counts: dict[str, int]):
        self.resamples = resamples
        self.counts = dict(counts)
        super().__init__(f"no valid coloring after {resamples} resamples (per class {self.counts})")


@dataclass
class ResampleResult:
    coloring: EdgeColoring
    resamples: int
    counts: dict[str, int] = field(default_factory=dict)
    trace_digest: str = ""

    def stats(self) -> dict:
        return {"resamples": self.resamples, "per_class_counts": dict(self.counts), "trace_digest": self.trace_digest}


def _bitsets(red: np.ndarray) -> list[int]:
    m = red.shape[0] - 1
    out = [0] * (m + 1)
    for v in range(1, m + 1):
        row = np.flatnonzero(red[v])
        x = 0
        for u in row.tolist():
            x |= 1 << u
        out[v] = x
    return out


def _first_event(spec: BadEventFamily, blue: np.ndarray, clique: OrderedGraph):
    """(class, pairs) of the first violated event, or None."""
    m = spec.m
    if spec.blue_triangle and m >= 3:
        both = blue[:, None, :] & blue[None, :, :]
        idx = np.arange(m + 1)
        hits = np.triu(blue, 1)[:, :, None] & both & (idx[None, None, :] > idx[None, :, None])
        found = np.argwhere(hits)
        if found.size:
            i, j, k = (int(x) for x in found[0])
            return "P", [(i, j), (i, k), (j, k)]
    red = ~blue
    np.fill_diagonal(red, False)
    red[0, :] = False
    red[:, 0] = False
    adj = _bitsets(red)
    for g in spec.red_family:
        if g.n > m:
            continue
        for img in _search(adj, m, g):
            return "Q", [(img[i - 1], img[j - 1]) for i, j in g.sorted_edges]
    if clique.n <= m:
        for img in _search(adj, m, clique):
            return "R", [(img[i - 1], img[j - 1]) for i, j in clique.sorted_edges]
    return None


def _coloring(blue: np.ndarray) -> EdgeColoring:
    m = blue.shape[0] - 1
    mat = np.where(blue, BLUE, RED).astype(np.int8)
    mat[0, :] = -1
    mat[:, 0] = -1
    np.fill_diagonal(mat, -1)
    return EdgeColoring(m, 2, mat)


def verify_coloring(spec: BadEventFamily, c: EdgeColoring) -> tuple[bool, str]:
    """Independent scans for the three properties."""
    if spec.blue_triangle:
        tri = find_monochromatic_triangle(c, BLUE)
        if tri is not None:
            return False, f"blue triangle {tri}"
    for g in spec.red_family:
        emb = find_monochromatic_copy(c, RED, g)
        if emb is not None:
            return False, f"red copy of {g.sorted_edges} at {emb.to_list()}"
    emb = find_monochromatic_copy(c, RED, complete(spec.red_clique_order))
    if emb is not None:
        return False, f"red K_{spec.red_clique_order} at {emb.to_list()}"
    return True, "ok"


def moser_tardos_coloring(
    spec: BadEventFamily,
    max_resamples: int = DEFAULT_MAX_RESAMPLES,
) -> ResampleResult:
    """Resample until no bad event holds; the result is re-verified by scans."""
    m = spec.m
    rng = np.random.default_rng(spec.seed)
    p = float(spec.p_blue)
    iu = np.triu_indices(m + 1, k=1)
    keep = iu[0] >= 1
    rows, cols = iu[0][keep], iu[1][keep]
    blue = np.zeros((m + 1, m + 1), dtype=bool)
    draws = rng.random(len(rows)) < p
    blue[rows, cols] = draws
    blue[cols, rows] = draws
    clique = complete(spec.red_clique_order)
    counts = {"P": 0, "Q": 0, "R": 0}
    digest = hashlib.sha256()
    resamples = 0
    while True:
        ev = _first_event(spec, blue, clique)
        if ev is None:
            break
        if resamples >= max_resamples:
            raise ResampleCapExceeded(resamples, counts)
        kind, pairs = ev
        counts[kind] += 1
        resamples += 1
        digest.update(f"{kind}{pairs}".encode())
        fresh = rng.random(len(pairs)) < p
        for (i, j), b in zip(pairs, fresh.tolist()):
            blue[i, j] = blue[j, i] = b
    c = _coloring(blue)
    ok, why = verify_coloring(spec, c)
    if not ok:  # pragma: no cover - the loop only exits when no event holds
        raise AssertionError(f"resampled coloring fails verification: {why}")
    return ResampleResult(c, resamples, counts, digest.hexdigest())
