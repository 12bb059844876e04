"""Explicit lower-bound colorings and orderings.

Every construction returns a plain EdgeColoring (or OrderedGraph) so the
result can be checked by the containment search in ``core`` or handed to the
solver. Nothing here is trusted: the helpers that claim a property also
expose a scan that re-checks it.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .core import (
    BLUE,
    RED,
    EdgeColoring,
    GraphError,
    OrderedGraph,
    SizeLimitError,
    find_monochromatic_copy,
    find_monochromatic_triangle,
    interval_chromatic,
)
from .generators import complete, is_matching

DEFAULT_VERTEX_CAP = 4096


def _check_cap(N: int, cap: int) -> None:
    if N > cap:
        raise SizeLimitError(f"coloring would have {N} vertices, cap is {cap}")


def _finish(matrix: np.ndarray) -> np.ndarray:
    matrix[0, :] = -1
    matrix[:, 0] = -1
    np.fill_diagonal(matrix, -1)
    return matrix


def es_path_coloring(n: int, q: int = 2, cap: int = DEFAULT_VERTEX_CAP) -> EdgeColoring:
    """Coloring of (n-1)^q vertices with no monochromatic monotone P_n.

    Vertices are the tuples of [n-1]^q in lexicographic order; a pair gets the
    index of the first coordinate where its two tuples differ.
    """
    if n < 2 or q < 2:
        raise GraphError("need n >= 2 and q >= 2")
    N = (n - 1) ** q
    _check_cap(N, cap)
    tuples = np.array(list(itertools.product(range(n - 1), repeat=q)), dtype=np.int64)
    if N == 1:
        return EdgeColoring(1, q, np.full((2, 2), -1, dtype=np.int8))
    differ = tuples[:, None, :] != tuples[None, :, :]
    first = np.argmax(differ, axis=2)
    m = np.full((N + 1, N + 1), -1, dtype=np.int8)
    m[1:, 1:] = first
    return EdgeColoring(N, q, _finish(m))


def blowup_coloring(
    base: EdgeColoring,
    s: int,
    inner: EdgeColoring | int,
    cap: int = DEFAULT_VERTEX_CAP,
) -> EdgeColoring:
    """Replace each vertex of ``base`` by an interval of ``s`` vertices.

    Pairs across blocks b < b' take base(b, b'); pairs inside a block take the
    ``inner`` coloring on [s], or the constant color if ``inner`` is an int.
    """
    if s < 1:
        raise GraphError("block size must be positive")
    N = base.N * s
    _check_cap(N, cap)
    blk = np.concatenate([[0], np.repeat(np.arange(1, base.N + 1), s)])
    pos = np.concatenate([[0], np.tile(np.arange(1, s + 1), base.N)])
    m = base.matrix[np.ix_(blk, blk)].copy()
    same = blk[:, None] == blk[None, :]
    if isinstance(inner, EdgeColoring):
        if inner.N != s:
            raise GraphError(f"inner coloring has {inner.N} vertices, block size is {s}")
        if inner.q != base.q:
            raise GraphError(f"inner uses {inner.q} colors, base uses {base.q}")
        m[same] = inner.matrix[np.ix_(pos, pos)][same]
    else:
        if not 0 <= int(inner) < base.q:
            raise GraphError(f"inner color {inner} not in 0..{base.q - 1}")
        m[same] = int(inner)
    return EdgeColoring(N, base.q, _finish(m))


def has_monochromatic(c: EdgeColoring, pattern: OrderedGraph) -> int | None:
    """First color whose class contains ``pattern``, else None."""
    for color in range(c.q):
        if find_monochromatic_copy(c, color, pattern) is not None:
            return color
    return None


def recursive_matching_lb(
    m: OrderedGraph,
    base: EdgeColoring,
    depth: int,
    k: int,
    cap: int = DEFAULT_VERTEX_CAP,
) -> EdgeColoring:
    """The iterated coloring G_depth: s copies of G_{depth-1} joined by base colors.

    ``base`` must have no monochromatic K_k; this is checked, not assumed.
    ``m`` is the matching the construction is aimed at; it is only validated.
    """
    if not is_matching(m):
        raise GraphError("target must be a matching")
    if depth < 0:
        raise GraphError("depth must be non-negative")
    _check_cap(base.N ** depth, cap)
    bad = has_monochromatic(base, complete(k))
    if bad is not None:
        raise GraphError(f"base coloring has a monochromatic K_{k} in color {bad}")
    g = EdgeColoring(1, base.q, np.full((2, 2), -1, dtype=np.int8))
    for _ in range(depth):
        g = blowup_coloring(base, g.N, g, cap) if g.N > 1 else base
    return g


def random_blowup_lb(
    m: OrderedGraph,
    s: int,
    t: int,
    seed: int | None = None,
    cap: int = DEFAULT_VERTEX_CAP,
) -> tuple[EdgeColoring, bool]:
    """Random base coloring of [t] with loops, blown up by intervals of size ``s``.

    The loop color of block i colors every pair inside that block. Returns the
    coloring and whether neither color class contains an ordered copy of ``m``.
    """
    if not is_matching(m):
        raise GraphError("target must be a matching")
    if m.edges and interval_chromatic(m) > 2:
        raise GraphError("target matching must have interval chromatic number 2")
    if s < 1 or t < 1:
        raise GraphError("s and t must be positive")
    _check_cap(s * t, cap)
    rng = np.random.default_rng(seed)
    chi = rng.integers(0, 2, size=(t, t))
    chi = np.triu(chi) + np.triu(chi, 1).T  # symmetric, loops on the diagonal
    blk = np.concatenate([[0], np.repeat(np.arange(t), s)])
    m_ = chi[np.ix_(blk, blk)].astype(np.int8)
    c = EdgeColoring(s * t, 2, _finish(m_))
    verified = has_monochromatic(c, m) is None
    return c, verified


def spread_positions(n: int, t: int) -> list[int]:
    """Positions 1 + (i-1)*floor(n/t) reserved for the t pattern vertices."""
    s = n // t
    return [1 + i * s for i in range(t)]


def spread_ordering(
    g_edges: Sequence[Sequence[int]],
    n: int,
    h: OrderedGraph,
    h_embedding: Sequence[int],
) -> OrderedGraph:
    """Order an unordered graph so a copy of ``h`` sits at evenly spaced positions.

    ``h_embedding[i-1]`` is the g-vertex playing vertex i of h. Those vertices
    go to positions 1 + (i-1)*floor(n/t); the rest fill the free positions in
    order of their original labels.
    """
    t = h.n
    if t > n:
        raise GraphError(f"pattern has {t} vertices but g only {n}")
    emb = [int(v) for v in h_embedding]
    if len(emb) != t or len(set(emb)) != t or not all(1 <= v <= n for v in emb):
        raise GraphError("h_embedding must be an injection into 1..n")
    gset = set()
    for e in g_edges:
        i, j = int(e[0]), int(e[1])
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise GraphError(f"bad edge {e!r} in g")
        gset.add((min(i, j), max(i, j)))
    for a, b in h.edges:
        x, y = emb[a - 1], emb[b - 1]
        if (min(x, y), max(x, y)) not in gset:
            raise GraphError(f"edge ({a}, {b}) of h is not mapped to an edge of g")
    slots = spread_positions(n, t)
    place = {v: p for v, p in zip(emb, slots)}
    free = iter(p for p in range(1, n + 1) if p not in set(slots))
    for v in range(1, n + 1):
        if v not in place:
            place[v] = next(free)
    out = OrderedGraph(n, [tuple(sorted((place[i], place[j]))) for i, j in gset])
    for a, b in h.edges:  # h must sit at the reserved slots
        assert out.has_edge(slots[a - 1], slots[b - 1])
    return out


def product_lb_coloring(
    avoiding: EdgeColoring,
    h: OrderedGraph,
    s: int,
    cap: int = DEFAULT_VERTEX_CAP,
) -> EdgeColoring:
    """Blow up an h-avoiding coloring by intervals of size ``s``, color 0 inside."""
    bad = has_monochromatic(avoiding, h)
    if bad is not None:
        raise GraphError(f"coloring contains h in color {bad}")
    if s == 1:
        return avoiding
    return blowup_coloring(avoiding, s, RED, cap)


def offdiagonal_assembly(
    c1: EdgeColoring,
    block: int,
    cap: int = DEFAULT_VERTEX_CAP,
) -> EdgeColoring:
    """Blow up ``c1`` by blocks of size ``block`` with every intra-block pair red.

    Blue pairs of the result project to blue pairs of ``c1`` in distinct
    blocks, so a blue-triangle-free ``c1`` yields a blue-triangle-free result;
    this is re-checked by a scan.
    """
    out = blowup_coloring(c1, block, RED, cap)
    if find_monochromatic_triangle(c1, BLUE) is None:
        tri = find_monochromatic_triangle(out, BLUE)
        if tri is not None:  # pragma: no cover - would be a construction bug
            raise AssertionError(f"assembly created blue triangle {tri}")
    return out


def spread_pattern(g: OrderedGraph, gap: int) -> OrderedGraph:
    """Place vertex i of ``g`` at 1 + (i-1)*gap, padding with isolated vertices."""
    if gap < 1:
        raise GraphError("gap must be positive")
    pos = [1 + i * gap for i in range(g.n)]
    return OrderedGraph(pos[-1], [(pos[i - 1], pos[j - 1]) for i, j in g.edges])


def verify_assembly(
    c: EdgeColoring,
    red_targets: Sequence[OrderedGraph],
) -> tuple[bool, str]:
    """No blue triangle and no red copy of any target; returns (ok, reason)."""
    tri = find_monochromatic_triangle(c, BLUE)
    if tri is not None:
        return False, f"blue triangle {tri}"
    for g in red_targets:
        emb = find_monochromatic_copy(c, RED, g)
        if emb is not None:
            return False, f"red copy of {g.sorted_edges} at {emb.to_list()}"
    return True, "ok"
