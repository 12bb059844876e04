"""Concrete ordered graphs, permutations and triple systems."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import GraphError, OrderedGraph, SizeLimitError

DEFAULT_DISCREPANCY_CAP = 256
DEFAULT_S_FAMILY_CAP = 6


@dataclass(frozen=True)
class Permutation:
    """Bijection on n points; ``image`` holds 0-indexed values."""

    n: int
    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(self.n)):
            raise GraphError(f"{self.image!r} is not a permutation of 0..{self.n - 1}")

    def __call__(self, i: int) -> int:
        """1-indexed evaluation: pi(i) in 1..n for i in 1..n."""
        return self.image[i - 1] + 1

    def to_dict(self) -> dict:
        return {"n": self.n, "image": list(self.image)}

    @classmethod
    def from_dict(cls, d: dict) -> "Permutation":
        return cls(int(d["n"]), tuple(int(x) for x in d["image"]))


@dataclass(frozen=True)
class TripleSystem:
    n: int
    triples: frozenset

    def __init__(self, n: int, triples: Iterable[Sequence[int]] = ()):
        ts = [tuple(int(x) for x in t) for t in triples]
        for t in ts:
            if len(t) != 3 or not (1 <= t[0] < t[1] < t[2] <= n):
                raise GraphError(f"triple {t!r} is not strictly increasing inside 1..{n}")
        if len(set(ts)) != len(ts):
            raise GraphError("duplicate triple")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "triples", frozenset(ts))

    @property
    def sorted_triples(self) -> list[tuple[int, int, int]]:
        return sorted(self.triples)

    def to_dict(self) -> dict:
        return {"n": self.n, "triples": [list(t) for t in self.sorted_triples]}

    @classmethod
    def from_dict(cls, d: dict) -> "TripleSystem":
        return cls(d["n"], d["triples"])

    def __repr__(self) -> str:
        return f"TripleSystem(n={self.n}, triples={self.sorted_triples})"


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise GraphError(f"{name} must be >= 1, got {value}")


def monotone_path(n: int) -> OrderedGraph:
    _positive("n", n)
    return OrderedGraph(n, [(i, i + 1) for i in range(1, n)])


def path_power(n: int, k: int) -> OrderedGraph:
    _positive("n", n)
    _positive("k", k)
    return OrderedGraph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, min(n, i + k) + 1)])


def complete(n: int) -> OrderedGraph:
    _positive("n", n)
    return OrderedGraph(n, itertools.combinations(range(1, n + 1), 2))


def complete_multipartite_trivial(parts: Sequence[int]) -> OrderedGraph:
    """Complete multipartite graph whose parts are consecutive intervals."""
    if not parts:
        raise GraphError("need at least one part")
    block = []
    for b, size in enumerate(parts):
        _positive("part size", size)
        block += [b] * size
    n = len(block)
    edges = [
        (i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if block[i] != block[j]
    ]
    return OrderedGraph(n, edges)


def empty(n: int) -> OrderedGraph:
    _positive("n", n)
    return OrderedGraph(n)


def lex_product(g: OrderedGraph, h: OrderedGraph) -> OrderedGraph:
    """|h| consecutive copies of g; copies a < b fully joined iff (a, b) is an edge of h."""
    s = g.n
    edges = []
    for a in range(h.n):
        off = a * s
        edges += [(i + off, j + off) for i, j in g.edges]
    for a, b in h.edges:
        edges += [
            ((a - 1) * s + x, (b - 1) * s + y) for x in range(1, s + 1) for y in range(1, s + 1)
        ]
    return OrderedGraph(s * h.n, edges)


def random_matching(n: int, seed: int | None = None, rng: np.random.Generator | None = None) -> OrderedGraph:
    """Uniform perfect matching on [n].

    A seeded Fisher-Yates shuffle (numpy's PCG64 generator) of 1..n is cut
    into consecutive pairs; every matching arises from the same number of
    shuffles, so the result is uniform.
    """
    if n % 2 or n < 2:
        raise GraphError(f"perfect matching needs a positive even vertex count, got {n}")
    if rng is None:
        rng = np.random.default_rng(seed)
    order = rng.permutation(np.arange(1, n + 1))
    pairs = order.reshape(-1, 2)
    return OrderedGraph(n, [tuple(sorted(map(int, p))) for p in pairs])


def is_perfect_matching(g: OrderedGraph) -> bool:
    return all(g.degree(v) == 1 for v in range(1, g.n + 1))


def is_matching(g: OrderedGraph) -> bool:
    return all(g.degree(v) <= 1 for v in range(1, g.n + 1))


def vdc_permutation(h: int) -> Permutation:
    """Bit-reversal permutation of 0..2^h - 1."""
    _positive("h", h)
    if h > 30:
        raise SizeLimitError(f"h={h} too large for an explicit permutation")
    image = tuple(int(format(i, f"0{h}b")[::-1], 2) for i in range(1 << h))
    return Permutation(1 << h, image)


def vdc_matching(h: int) -> OrderedGraph:
    """Matching on [2n], n = 2^h, joining i to n + pi(i)."""
    p = vdc_permutation(h)
    n = p.n
    return OrderedGraph(2 * n, [(i, n + p(i)) for i in range(1, n + 1)])


def interval_discrepancy(p: Permutation, cap: int = DEFAULT_DISCREPANCY_CAP) -> Fraction:
    """max over intervals I, J of | |p(I) & J| - |I||J|/n |, exactly."""
    n = p.n
    if n > cap:
        raise SizeLimitError(f"interval_discrepancy limited to n <= {cap}, got {n}")
    # P[a, b] = #{i <= a : p(i) <= b}
    grid = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(1, n + 1):
        grid[i, p(i)] = 1
    P = grid.cumsum(0).cumsum(1)
    lo, hi = np.triu_indices(n + 1, k=1)  # intervals (lo, hi] as prefix differences
    lengths = hi - lo
    best = 0
    for a0, a1 in zip(lo.tolist(), hi.tolist()):
        # counts[J] = |p((a0, a1]) & (lo, hi]|
        rows = P[a1] - P[a0]
        counts = rows[hi] - rows[lo]
        dev = np.abs(n * counts - (a1 - a0) * lengths).max()
        if dev > best:
            best = int(dev)
    return Fraction(best, n)


def jumbled_matching(t: int) -> OrderedGraph:
    """Perfect matching on t^2 vertices with an edge between every two of the t blocks.

    Block pairs are visited in lexicographic order, each joining the lowest
    unmatched vertex of either block. This leaves one vertex per block;
    those are paired in block order (block 1 with 2, 3 with 4, ...).
    """
    if t < 2 or t % 2:
        raise GraphError(f"jumbled_matching needs an even t >= 2, got {t}")
    free = [list(range(b * t + 1, (b + 1) * t + 1)) for b in range(t)]
    edges = []
    for a, b in itertools.combinations(range(t), 2):
        if not free[a] or not free[b]:  # pragma: no cover - t-1 < t slots per block
            raise GraphError(f"jumbled construction ran out of vertices for t={t}")
        edges.append((free[a].pop(0), free[b].pop(0)))
    left = [v for f in free for v in f]
    edges += [(left[k], left[k + 1]) for k in range(0, len(left), 2)]
    g = OrderedGraph(t * t, edges)
    assert is_perfect_matching(g)
    return g


def _pair_counts(m: OrderedGraph) -> np.ndarray:
    """2D prefix sums S with S[a, b] = #{edges (x, y) : x <= a, y <= b}."""
    n = m.n
    grid = np.zeros((n + 1, n + 1), dtype=np.int64)
    for x, y in m.edges:
        grid[x, y] += 1
    return grid.cumsum(0).cumsum(1)


def _cross_edges(S: np.ndarray, a0, a1, b0, b1):
    """Edges with left end in (a0, a1] and right end in (b0, b1]; broadcasts."""
    return S[a1, b1] - S[a0, b1] - S[a1, b0] + S[a0, b0]


def is_jumbled(m: OrderedGraph) -> bool:
    """Both jumbledness conditions, checked over all disjoint interval pairs.

    Edge counts are monotone under enlarging intervals, so the "at least one
    edge" condition only needs intervals of the minimal allowed length, and
    the "at most 9 edges" condition is checked for every length pair up to
    the maximum.
    """
    if not is_perfect_matching(m):
        raise GraphError("is_jumbled expects a perfect matching")
    n = m.n
    root = 2 * math.sqrt(n)
    long_len = math.ceil(root - 1e-12)
    short_len = math.floor(root + 1e-12)
    S = _pair_counts(m)
    # condition 1: intervals A = (a, a+L], B = (b, b+L] with b >= a + L
    L = long_len
    if 2 * L <= n:
        a = np.arange(0, n - 2 * L + 1)
        for a0 in a.tolist():
            b0 = np.arange(a0 + L, n - L + 1)
            counts = _cross_edges(S, a0, a0 + L, b0, b0 + L)
            if (counts == 0).any():
                return False
    # condition 2: lengths la, lb <= short_len
    for la in range(1, short_len + 1):
        for lb in range(1, short_len + 1):
            if la + lb > n:
                continue
            a0 = np.arange(0, n - la - lb + 1)
            for x in a0.tolist():
                b0 = np.arange(x + la, n - lb + 1)
                counts = _cross_edges(S, x, x + la, b0, b0 + lb)
                if (counts > 9).any():
                    return False
    return True


def disjoint_interval_gap_free(m: OrderedGraph, length: int) -> bool:
    """True iff every two disjoint intervals of ``length`` vertices share an edge of m."""
    n = m.n
    if 2 * length > n:
        return True
    S = _pair_counts(m)
    L = length
    a0 = np.arange(0, n - 2 * L + 1)[:, None]
    b0 = np.arange(0, n - L + 1)[None, :]
    valid = b0 >= a0 + L
    counts = _cross_edges(S, a0, a0 + L, b0, b0 + L)
    return not ((counts == 0) & valid).any()


def j_k(k: int) -> OrderedGraph:
    _positive("k", k)
    return OrderedGraph(2 * k, [(i, j) for i in range(1, k + 1) for j in range(k + 1, 2 * k + 1)])


def is_interval_minor(small: OrderedGraph, k: int, big: OrderedGraph, N: int) -> bool:
    """Interval-minor test for bipartite ordered graphs split at k and N.

    ``small`` has edges between [k] and [k+1, n]; ``big`` between [N] and
    [N+1, N+M]. Both sides of ``big`` are cut into consecutive intervals,
    one per vertex of ``small``; every edge of ``small`` needs at least one
    edge of ``big`` between the matching intervals.
    """
    left_small, right_small = k, small.n - k
    M = big.n - N
    if left_small > N or right_small > M:
        return False
    S = _pair_counts(big)

    def cuts(total: int, parts: int, offset: int):
        for inner in itertools.combinations(range(1, total), parts - 1):
            bounds = (0,) + inner + (total,)
            yield [(offset + bounds[p], offset + bounds[p + 1]) for p in range(parts)]

    for left in cuts(N, left_small, 0):
        for right in cuts(M, right_small, N):
            parts = left + right
            if all(
                _cross_edges(S, parts[i - 1][0], parts[i - 1][1], parts[j - 1][0], parts[j - 1][1]) > 0
                for i, j in small.edges
            ):
                return True
    return False


def tight_path_3(n: int) -> TripleSystem:
    if n < 3:
        raise GraphError(f"tight path needs n >= 3, got {n}")
    return TripleSystem(n, [(i, i + 1, i + 2) for i in range(1, n - 1)])


def complete_triples(n: int) -> TripleSystem:
    return TripleSystem(n, itertools.combinations(range(1, n + 1), 3))


def t_hypergraph(h: OrderedGraph) -> TripleSystem:
    """Triples {i, j, k} on [n+1] whose first pair (i, j) is an edge of h."""
    n = h.n
    return TripleSystem(n + 1, [(i, j, k) for i, j in h.edges for k in range(j + 1, n + 2)])


def _triples_embed(hs: TripleSystem, host: frozenset, n_host: int, ordered: bool) -> bool:
    verts = range(1, n_host + 1)
    maps = (
        itertools.combinations(verts, hs.n)
        if ordered
        else itertools.permutations(verts, hs.n)
    )
    for img in maps:
        if all(tuple(sorted((img[a - 1], img[b - 1], img[c - 1]))) in host for a, b, c in hs.triples):
            return True
    return False


def all_graphs(n: int) -> Iterable[OrderedGraph]:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield OrderedGraph(n, [p for b, p in enumerate(pairs) if (mask >> b) & 1])


def s_family(
    hs: TripleSystem, cap: int = DEFAULT_S_FAMILY_CAP, ordered: bool = False
) -> list[OrderedGraph]:
    """All graphs H on [hs.n - 1] such that T(H) contains a copy of hs.

    By default a copy is any injective relabelling of hs (hs is treated as
    an unordered hypergraph). ``ordered=True`` restricts to increasing maps,
    which for equal vertex counts means hs must sit inside T(H) verbatim.
    """
    n = hs.n - 1
    if n < 1:
        raise GraphError("triple system needs at least two vertices")
    if n > cap:
        raise SizeLimitError(f"s_family enumerates graphs on <= {cap} vertices, got {n}")
    out = []
    for g in all_graphs(n):
        if _triples_embed(hs, t_hypergraph(g).triples, n + 1, ordered):
            out.append(g)
    return out
