"""Ordered graphs, edge colorings and order-preserving containment.

Vertices are 1-indexed throughout. Adjacency is kept as Python integer
bitsets (bit ``v`` set means vertex ``v`` is a neighbour), which keeps the
containment search cheap without pulling in a graph library.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_PATTERN_CAP = 16
DEFAULT_COVER_CAP = 24

RED = 0
BLUE = 1


class GraphError(ValueError):
    """Raised when an ordered graph, coloring or embedding is malformed."""


class SizeLimitError(ValueError):
    """Raised when an input exceeds a configured size cap."""


def _bit_range(lo: int, hi: int) -> int:
    """Bitmask with bits lo..hi (inclusive) set; empty if lo > hi."""
    if lo > hi:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class OrderedGraph:
    """Graph on vertex set {1..n}; edges are pairs (i, j) with i < j."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(tuple(int(x) for x in e) for e in edges))

    @classmethod
    def checked(cls, n: int, edges: Iterable[Sequence[int]]) -> "OrderedGraph":
        """Build a graph and validate it, keeping duplicate detection on the raw list."""
        raw = [tuple(int(x) for x in e) for e in edges]
        validate_edges(n, raw)
        return cls(n, raw)

    @cached_property
    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbour bitsets, index 0 unused."""
        nb = [0] * (self.n + 1)
        for i, j in self.edges:
            nb[i] |= 1 << j
            nb[j] |= 1 << i
        return tuple(nb)

    def has_edge(self, i: int, j: int) -> bool:
        if i > j:
            i, j = j, i
        return (i, j) in self.edges

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(_iter_bits(self.adj[v]))

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(1, self.n + 1)), default=0)

    def induced(self, vertices: Sequence[int]) -> "OrderedGraph":
        """Subgraph induced on ``vertices`` (sorted), relabelled 1..k in order."""
        vs = sorted(vertices)
        pos = {v: k + 1 for k, v in enumerate(vs)}
        return OrderedGraph(
            len(vs), [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        )

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges]}

    @classmethod
    def from_dict(cls, d: dict) -> "OrderedGraph":
        return cls.checked(d["n"], d["edges"])

    def __repr__(self) -> str:
        return f"OrderedGraph(n={self.n}, edges={self.sorted_edges})"


def validate_edges(n: int, edges: Sequence[tuple[int, int]]) -> None:
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"vertex count must be a positive integer, got {n!r}")
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} is not a pair")
        i, j = e
        if i == j:
            raise GraphError(f"loop at vertex {i}")
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphError(f"edge ({i}, {j}) out of range 1..{n}")
        if i > j:
            raise GraphError(f"edge ({i}, {j}) is not ordered i < j")
        if (i, j) in seen:
            raise GraphError(f"duplicate edge ({i}, {j})")
        seen.add((i, j))


def validate(g: OrderedGraph) -> None:
    """Raise GraphError describing the first violated invariant of ``g``."""
    validate_edges(g.n, g.sorted_edges)


@dataclass(frozen=True)
class Embedding:
    """Strictly increasing map from pattern vertices 1..k into host vertices."""

    image: tuple[int, ...]

    def __init__(self, image: Iterable[int]):
        object.__setattr__(self, "image", tuple(int(x) for x in image))

    @property
    def pattern_n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v - 1]

    def is_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.image, self.image[1:]))

    def maps_into(self, host: OrderedGraph, pattern: OrderedGraph) -> bool:
        """True iff this is a valid ordered copy of ``pattern`` in ``host``."""
        if len(self.image) != pattern.n or not self.is_increasing():
            return False
        if self.image and not (1 <= self.image[0] and self.image[-1] <= host.n):
            return False
        return all(host.has_edge(self(i), self(j)) for i, j in pattern.edges)

    def to_list(self) -> list[int]:
        return list(self.image)


@dataclass(frozen=True)
class EdgeColoring:
    """q-coloring of all pairs of {1..N}.

    ``matrix`` is a symmetric (N+1)x(N+1) int8 array, row/column 0 and the
    diagonal set to -1. It is marked read-only.
    """

    N: int
    q: int
    matrix: np.ndarray = field(repr=False, compare=False)

    def __init__(self, N: int, q: int, matrix: np.ndarray):
        m = np.array(matrix, dtype=np.int8, copy=True)
        m.setflags(write=False)
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_function(cls, N: int, q: int, fn) -> "EdgeColoring":
        m = np.full((N + 1, N + 1), -1, dtype=np.int8)
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                m[i, j] = m[j, i] = fn(i, j)
        out = cls(N, q, m)
        out.check()
        return out

    @classmethod
    def from_pairs(cls, N: int, q: int, colors: Sequence[int]) -> "EdgeColoring":
        """Colors listed for (1,2),(1,3),...,(1,N),(2,3),... in row-major order."""
        expected = N * (N - 1) // 2
        if len(colors) != expected:
            raise GraphError(f"expected {expected} pair colors for N={N}, got {len(colors)}")
        m = np.full((N + 1, N + 1), -1, dtype=np.int8)
        if N >= 2:
            iu = np.triu_indices(N, k=1)
            m[iu[0] + 1, iu[1] + 1] = colors
            m[iu[1] + 1, iu[0] + 1] = colors
        out = cls(N, q, m)
        out.check()
        return out

    @classmethod
    def constant(cls, N: int, q: int, color: int) -> "EdgeColoring":
        m = np.full((N + 1, N + 1), color, dtype=np.int8)
        m[0, :] = -1
        m[:, 0] = -1
        np.fill_diagonal(m, -1)
        return cls(N, q, m)

    def check(self) -> None:
        if self.N < 1:
            raise GraphError("coloring needs at least one vertex")
        if self.q < 2:
            raise GraphError("need at least two colors")
        if self.matrix.shape != (self.N + 1, self.N + 1):
            raise GraphError("color matrix has the wrong shape")
        inner = self.matrix[1:, 1:]
        off = ~np.eye(self.N, dtype=bool)
        vals = inner[off]
        if vals.size and (vals.min() < 0 or vals.max() >= self.q):
            raise GraphError("a pair has a color outside 0..q-1")
        if not np.array_equal(inner, inner.T):
            raise GraphError("color matrix is not symmetric")

    def __call__(self, i: int, j: int) -> int:
        return int(self.matrix[i, j])

    def pair_colors(self) -> list[int]:
        if self.N < 2:
            return []
        iu = np.triu_indices(self.N, k=1)
        return [int(x) for x in self.matrix[iu[0] + 1, iu[1] + 1]]

    def color_class(self, color: int) -> OrderedGraph:
        """The ordered graph formed by pairs of the given color."""
        if not 0 <= color < self.q:
            raise GraphError(f"color {color} not in 0..{self.q - 1}")
        ii, jj = np.nonzero(np.triu(self.matrix == color, k=1))
        return OrderedGraph(self.N, zip(ii.tolist(), jj.tolist()))

    def restrict(self, vertices: Sequence[int]) -> "EdgeColoring":
        """Coloring induced on ``vertices`` (sorted), relabelled 1..k."""
        idx = np.array([0] + sorted(vertices))
        return EdgeColoring(len(vertices), self.q, self.matrix[np.ix_(idx, idx)])

    def swapped(self) -> "EdgeColoring":
        """Exchange colors 0 and 1 of a 2-coloring."""
        m = self.matrix.copy()
        m[self.matrix == 0] = 1
        m[self.matrix == 1] = 0
        return EdgeColoring(self.N, self.q, m)

    def to_dict(self) -> dict:
        return {"N": self.N, "q": self.q, "colors": self.pair_colors()}

    @classmethod
    def from_dict(cls, d: dict) -> "EdgeColoring":
        return cls.from_pairs(d["N"], d["q"], d["colors"])

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.N == other.N and self.q == other.q and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.N, self.q, self.matrix.tobytes()))


@dataclass(frozen=True)
class GraphStats:
    max_degree: int
    degeneracy: int
    degenerate_ordering: tuple[int, ...]
    interval_chromatic: int
    bandwidth: int
    cover_number: int

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "degeneracy": self.degeneracy,
            "degenerate_ordering": list(self.degenerate_ordering),
            "interval_chromatic": self.interval_chromatic,
            "bandwidth": self.bandwidth,
            "cover_number": self.cover_number,
        }


# --------------------------------------------------------------------------
# containment


def _search(
    host_adj: Sequence[int],
    N: int,
    pattern: OrderedGraph,
    fixed: dict[int, int] | None = None,
) -> Iterator[list[int]]:
    """Yield every increasing map of pattern vertices into 1..N preserving edges.

    ``fixed`` pins some pattern vertices to host vertices. Vertices are
    assigned in label order; each candidate set is the window left open by
    the previous image and the next pinned vertex, intersected with the
    neighbourhoods of already placed (or pinned) neighbours.
    """
    n = pattern.n
    fixed = fixed or {}
    padj = pattern.adj
    # upper bound for vertex k: the next pinned vertex f > k leaves f - k slots
    upper = [0] * (n + 2)
    nxt = N + 1
    nxt_label = n + 1
    for k in range(n, 0, -1):
        upper[k] = nxt - (nxt_label - k)
        if k in fixed:
            nxt, nxt_label = fixed[k], k
    img = [0] * (n + 1)

    def rec(k: int, prev: int) -> Iterator[list[int]]:
        if k > n:
            yield img[1:]
            return
        hi = upper[k]
        if k in fixed:
            v = fixed[k]
            if v <= prev or v > hi:
                return
            cand = 1 << v
        else:
            cand = _bit_range(prev + 1, hi)
        if not cand:
            return
        nb = padj[k]
        for u in _iter_bits(nb):
            if u < k:
                cand &= host_adj[img[u]]
            elif u in fixed:
                cand &= host_adj[fixed[u]]
            if not cand:
                return
        for v in _iter_bits(cand):
            img[k] = v
            yield from rec(k + 1, v)
        img[k] = 0

    yield from rec(1, 0)


def _check_pattern_size(pattern: OrderedGraph, cap: int) -> None:
    if pattern.n > cap:
        raise SizeLimitError(f"pattern has {pattern.n} vertices, cap is {cap}")


def iter_ordered_copies(
    host: OrderedGraph, pattern: OrderedGraph, cap: int = DEFAULT_PATTERN_CAP
) -> Iterator[Embedding]:
    """Every ordered copy of ``pattern`` in ``host``, in lexicographic order of images."""
    _check_pattern_size(pattern, cap)
    if pattern.n > host.n:
        return
    for img in _search(host.adj, host.n, pattern):
        yield Embedding(img)


def find_ordered_copy(
    host: OrderedGraph, pattern: OrderedGraph, cap: int = DEFAULT_PATTERN_CAP
) -> Embedding | None:
    """Lexicographically first ordered copy of ``pattern`` in ``host``, or None."""
    for emb in iter_ordered_copies(host, pattern, cap):
        if not emb.maps_into(host, pattern):  # pragma: no cover - internal consistency
            raise AssertionError(f"search produced an invalid embedding {emb.image}")
        return emb
    return None


def find_monochromatic_copy(
    c: EdgeColoring, color: int, pattern: OrderedGraph, cap: int = DEFAULT_PATTERN_CAP
) -> Embedding | None:
    return find_ordered_copy(c.color_class(color), pattern, cap)


def find_monochromatic_triangle(c: EdgeColoring, color: int) -> tuple[int, int, int] | None:
    """Lexicographically first triangle i < j < k all of whose pairs have ``color``."""
    if not 0 <= color < c.q:
        raise GraphError(f"color {color} not in 0..{c.q - 1}")
    a = c.matrix == color
    both = a[:, None, :] & a[None, :, :]  # both[i, j, k]: i~k and j~k
    idx = np.arange(c.N + 1)
    later = idx[None, None, :] > idx[None, :, None]
    hits = np.triu(a, k=1)[:, :, None] & both & later
    found = np.argwhere(hits)
    if found.size == 0:
        return None
    i, j, k = found[0]
    return int(i), int(j), int(k)


def longest_monotone_path(c: EdgeColoring, color: int) -> int:
    """Vertex count of the longest monotone path in one color class."""
    if not 0 <= color < c.q:
        raise GraphError(f"color {color} not in 0..{c.q - 1}")
    return max(monotone_path_labels(c, color)[1:], default=0)


def monotone_path_labels(c: EdgeColoring, color: int) -> list[int]:
    """label[v] = vertices on the longest monotone path of ``color`` ending at v."""
    mask = c.matrix == color
    label = [0] * (c.N + 1)
    for v in range(1, c.N + 1):
        best = 0
        for u in range(1, v):
            if mask[u, v] and label[u] > best:
                best = label[u]
        label[v] = best + 1
    return label


# --------------------------------------------------------------------------
# statistics


def interval_chromatic(g: OrderedGraph) -> int:
    """Fewest consecutive intervals covering 1..n with no edge inside an interval."""
    count = 1
    start = 1
    for v in range(2, g.n + 1):
        if g.adj[v] & _bit_range(start, v - 1):
            count += 1
            start = v
    return count


def degeneracy(g: OrderedGraph) -> tuple[int, list[int]]:
    """Degeneracy and an ordering in which each vertex has <= d earlier neighbours.

    Repeatedly removes a minimum-degree vertex (smallest label on ties);
    the ordering is the reverse of the removal sequence.
    """
    alive = set(range(1, g.n + 1))
    deg = {v: g.degree(v) for v in alive}
    removal = []
    d = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        d = max(d, deg[v])
        removal.append(v)
        alive.remove(v)
        for u in _iter_bits(g.adj[v]):
            if u in alive:
                deg[u] -= 1
    return d, removal[::-1]


def bandwidth(g: OrderedGraph) -> int:
    return max((j - i for i, j in g.edges), default=0)


def cover_number(g: OrderedGraph, cap: int = DEFAULT_COVER_CAP) -> int:
    """Exact minimum vertex cover size by branching on an uncovered edge."""
    if g.n > cap:
        raise SizeLimitError(f"cover_number limited to n <= {cap}, got {g.n}")
    adj = list(g.adj)
    best = [g.n]

    def matching_bound(edges: list[tuple[int, int]]) -> int:
        used = 0
        size = 0
        for i, j in edges:
            if not (used >> i) & 1 and not (used >> j) & 1:
                used |= (1 << i) | (1 << j)
                size += 1
        return size

    def rec(removed: int, chosen: int) -> None:
        edges = [
            (i, j)
            for i, j in g.sorted_edges
            if not (removed >> i) & 1 and not (removed >> j) & 1
        ]
        if not edges:
            best[0] = min(best[0], chosen)
            return
        if chosen + matching_bound(edges) >= best[0]:
            return
        # branch on the endpoint of highest remaining degree first
        i, j = max(
            edges,
            key=lambda e: (
                max((adj[e[0]] & ~removed).bit_count(), (adj[e[1]] & ~removed).bit_count()),
                -e[0],
                -e[1],
            ),
        )
        a, b = (i, j) if (adj[i] & ~removed).bit_count() >= (adj[j] & ~removed).bit_count() else (j, i)
        rec(removed | (1 << a), chosen + 1)
        # not taking a forces all its remaining neighbours into the cover
        nb = adj[a] & ~removed
        rec(removed | nb | (1 << a), chosen + nb.bit_count())

    rec(0, 0)
    return best[0]


def graph_stats(g: OrderedGraph, cover_cap: int = DEFAULT_COVER_CAP) -> GraphStats:
    d, order = degeneracy(g)
    return GraphStats(
        max_degree=g.max_degree,
        degeneracy=d,
        degenerate_ordering=tuple(order),
        interval_chromatic=interval_chromatic(g),
        bandwidth=bandwidth(g),
        cover_number=cover_number(g, cover_cap),
    )


def all_increasing_maps(n: int, N: int) -> Iterator[tuple[int, ...]]:
    """All strictly increasing maps [n] -> [N]."""
    return itertools.combinations(range(1, N + 1), n)


class _Plan:
    """Per-pattern data for the boolean containment test used in hot loops."""

    __slots__ = ("n", "back", "fwd")

    def __init__(self, pattern: OrderedGraph):
        self.n = pattern.n
        self.back = [()] + [tuple(u for u in pattern.neighbors(k) if u < k) for k in range(1, pattern.n + 1)]
        self.fwd = [()] + [tuple(u for u in pattern.neighbors(k) if u > k) for k in range(1, pattern.n + 1)]


def _exists(host_adj: Sequence[int], N: int, plan: _Plan, fixed: dict[int, int]) -> bool:
    """Boolean version of ``_search``: is there any copy respecting ``fixed``?"""
    n = plan.n
    upper = [0] * (n + 2)
    nxt, nxt_label = N + 1, n + 1
    for k in range(n, 0, -1):
        upper[k] = nxt - (nxt_label - k)
        if k in fixed:
            nxt, nxt_label = fixed[k], k
    img = [0] * (n + 1)
    back, fwd = plan.back, plan.fwd

    def rec(k: int, prev: int) -> bool:
        if k > n:
            return True
        hi = upper[k]
        v = fixed.get(k)
        if v is not None:
            if v <= prev or v > hi:
                return False
            cand = 1 << v
        else:
            if prev + 1 > hi:
                return False
            cand = ((1 << (hi - prev)) - 1) << (prev + 1)
        for u in back[k]:
            cand &= host_adj[img[u]]
        for u in fwd[k]:
            w = fixed.get(u)
            if w is not None:
                cand &= host_adj[w]
        while cand:
            low = cand & -cand
            img[k] = low.bit_length() - 1
            if rec(k + 1, img[k]):
                return True
            cand ^= low
        return False

    return rec(1, 0)
