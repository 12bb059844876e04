"""Constructive upper-bound procedures.

Each procedure takes a coloring (or the red graph of one) and returns a
witness for one side of an off-diagonal Ramsey statement: a red copy of
one pattern, a blue copy of another, or a family of vertex sets with low red
density between them. Every witness can be re-verified against the host.

Hosts are handled internally as boolean adjacency matrices indexed 0..N with
row and column 0 unused, which keeps the neighbourhood counts vectorized.
Densities are exact fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .core import (
    BLUE,
    RED,
    EdgeColoring,
    Embedding,
    GraphError,
    OrderedGraph,
    degeneracy,
    monotone_path_labels,
)
from .generators import complete, complete_multipartite_trivial, is_matching, lex_product, monotone_path, path_power


class PreconditionError(ValueError):
    """The host is too small (or otherwise outside the statement's hypotheses)."""


class EmbedderContractError(RuntimeError):
    """A sub-embedder returned a witness that does not verify."""


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def _matrix(host, color: int = RED) -> np.ndarray:
    """Boolean adjacency of an OrderedGraph, of one color class, or a ready matrix."""
    if isinstance(host, EdgeColoring):
        return host.matrix == color
    if isinstance(host, OrderedGraph):
        a = np.zeros((host.n + 1, host.n + 1), dtype=bool)
        if host.edges:
            e = np.array(host.sorted_edges)
            a[e[:, 0], e[:, 1]] = True
            a[e[:, 1], e[:, 0]] = True
        return a
    a = np.asarray(host, dtype=bool)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphError("adjacency matrix must be square")
    return a


def _complement(a: np.ndarray) -> np.ndarray:
    b = ~a
    np.fill_diagonal(b, False)
    b[0, :] = False
    b[:, 0] = False
    return b


def _embeds(a: np.ndarray, pattern: OrderedGraph, image: Sequence[int]) -> bool:
    N = a.shape[0] - 1
    if len(image) != pattern.n:
        return False
    if any(x >= y for x, y in zip(image, image[1:])):
        return False
    if image and not (1 <= image[0] and image[-1] <= N):
        return False
    return all(a[image[i - 1], image[j - 1]] for i, j in pattern.edges)


def density(a: np.ndarray, xs: Sequence[int], ys: Sequence[int]) -> Fraction:
    """Edge density between two disjoint vertex sets."""
    if len(xs) == 0 or len(ys) == 0:
        return Fraction(0)
    e = int(a[np.ix_(np.asarray(xs), np.asarray(ys))].sum())
    return Fraction(e, len(xs) * len(ys))


def internal_density(a: np.ndarray, xs: Sequence[int]) -> Fraction:
    """Edges inside ``xs`` divided by C(|xs|, 2)."""
    k = len(xs)
    if k < 2:
        return Fraction(0)
    e = int(np.triu(a[np.ix_(np.asarray(xs), np.asarray(xs))], 1).sum())
    return Fraction(e, k * (k - 1) // 2)


# --------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class SparseWitness:
    """Ordered sets W_1 < ... < W_m with pairwise density at most ``threshold``."""

    sets: tuple[tuple[int, ...], ...]
    threshold: Fraction
    size_bound: Fraction
    color: int = RED

    def check(self, host) -> tuple[bool, str]:
        a = _matrix(host, self.color)
        N = a.shape[0] - 1
        for k, w in enumerate(self.sets):
            if len(w) < self.size_bound:
                return False, f"W_{k + 1} has {len(w)} vertices, bound is {self.size_bound}"
            if not all(1 <= v <= N for v in w) or list(w) != sorted(set(w)):
                return False, f"W_{k + 1} is not a sorted set of host vertices"
        for k in range(len(self.sets) - 1):
            if self.sets[k][-1] >= self.sets[k + 1][0]:
                return False, f"W_{k + 1} does not precede W_{k + 2}"
        for i in range(len(self.sets)):
            for j in range(i + 1, len(self.sets)):
                dens = density(a, self.sets[i], self.sets[j])
                if dens > self.threshold:
                    return False, f"density {dens} between W_{i + 1} and W_{j + 1} exceeds {self.threshold}"
        return True, "ok"

    def verify(self, host) -> bool:
        return self.check(host)[0]

    def to_dict(self) -> dict:
        return {
            "sets": [list(w) for w in self.sets],
            "threshold": str(self.threshold),
            "size_bound": str(self.size_bound),
            "color": self.color,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SparseWitness":
        return cls(
            tuple(tuple(int(v) for v in w) for w in d["sets"]),
            Fraction(d["threshold"]),
            Fraction(d["size_bound"]),
            int(d.get("color", RED)),
        )


@dataclass(frozen=True)
class EitherWitness:
    """A red copy, a blue copy, or a sparse family; exactly one arm is set.

    When verified against an OrderedGraph host, that graph is taken as the red
    graph and its complement as the blue one.
    """

    kind: str
    pattern: OrderedGraph | None = None
    embedding: Embedding | None = None
    sparse: SparseWitness | None = None

    def __post_init__(self):
        if self.kind in ("red", "blue"):
            if self.embedding is None or self.pattern is None or self.sparse is not None:
                raise GraphError(f"{self.kind} witness needs a pattern and an embedding only")
        elif self.kind == "sparse":
            if self.sparse is None or self.embedding is not None:
                raise GraphError("sparse witness needs the set family only")
        else:
            raise GraphError(f"unknown witness kind {self.kind!r}")

    def check(self, host) -> tuple[bool, str]:
        if self.kind == "sparse":
            return self.sparse.check(host)
        if isinstance(host, EdgeColoring):
            a = _matrix(host, RED if self.kind == "red" else BLUE)
        else:
            a = _matrix(host)
            if self.kind == "blue":
                a = _complement(a)
        if _embeds(a, self.pattern, self.embedding.image):
            return True, "ok"
        return False, f"{self.kind} image {list(self.embedding.image)} is not a copy of the pattern"

    def verify(self, host) -> bool:
        return self.check(host)[0]

    def to_dict(self) -> dict:
        if self.kind == "sparse":
            return {"kind": "sparse", **self.sparse.to_dict()}
        return {"kind": self.kind, "pattern": self.pattern.to_dict(), "image": self.embedding.to_list()}

    @classmethod
    def from_dict(cls, d: dict) -> "EitherWitness":
        if d["kind"] == "sparse":
            return cls("sparse", sparse=SparseWitness.from_dict(d))
        return cls(d["kind"], OrderedGraph.from_dict(d["pattern"]), Embedding(d["image"]))


def _red(pattern: OrderedGraph, image) -> EitherWitness:
    return EitherWitness("red", pattern, Embedding(image))


def _blue(pattern: OrderedGraph, image) -> EitherWitness:
    return EitherWitness("blue", pattern, Embedding(image))


@dataclass(frozen=True)
class Embedder:
    """A procedure finding red ``red`` or blue ``blue`` in any coloring of [size]."""

    size: int
    red: OrderedGraph
    blue: OrderedGraph
    run: Callable[[EdgeColoring], EitherWitness]

    def __call__(self, c: EdgeColoring) -> EitherWitness:
        if c.N > self.size:
            c = c.restrict(range(1, self.size + 1))
        w = self.run(c)
        ok, why = w.check(c)
        if not ok:
            raise EmbedderContractError(why)
        return w


# --------------------------------------------------------------------------
# red path or blue clique


def _red_path_ending(c: EdgeColoring, label: list[int], v: int, length: int) -> list[int]:
    path = [v]
    red = c.matrix == RED
    while len(path) < length:
        cur = path[-1]
        u = next(u for u in range(cur - 1, 0, -1) if red[u, cur] and label[u] == label[cur] - 1)
        path.append(u)
    return path[::-1]


def path_vs_clique(c: EdgeColoring, m: int, n: int) -> EitherWitness:
    """Red monotone P_m or blue K_n via longest-red-path labels.

    Two vertices with the same label cannot be joined in red (the later one
    would get a larger label), so a label class of size n is a blue clique.
    """
    need = (m - 1) * (n - 1) + 1
    if c.N < need:
        raise PreconditionError(f"need N >= {need}, got {c.N}")
    label = monotone_path_labels(c, RED)
    for v in range(1, c.N + 1):
        if label[v] >= m:
            return _red(monotone_path(m), _red_path_ending(c, label, v, m))
    classes: dict[int, list[int]] = {}
    for v in range(1, c.N + 1):
        classes.setdefault(label[v], []).append(v)
    for lab in sorted(classes):
        if len(classes[lab]) >= n:
            return _blue(complete(n), classes[lab][:n])
    raise AssertionError("pigeonhole failed")  # pragma: no cover


@dataclass(frozen=True)
class MonotoneSubsequence:
    direction: str  # "increasing" or "decreasing"
    positions: tuple[int, ...]  # 1-indexed
    values: tuple


def erdos_szekeres_sequence_witness(xs: Sequence, n: int) -> MonotoneSubsequence:
    """Monotone subsequence of length n through the comparison coloring."""
    if len(set(xs)) != len(xs):
        raise GraphError("sequence values must be distinct")
    need = (n - 1) ** 2 + 1
    if len(xs) < need:
        raise PreconditionError(f"need at least {need} values, got {len(xs)}")
    N = len(xs)
    c = EdgeColoring.from_function(N, 2, lambda i, j: RED if xs[i - 1] < xs[j - 1] else BLUE)
    w = path_vs_clique(c, n, n)
    pos = w.embedding.image
    direction = "increasing" if w.kind == "red" else "decreasing"
    return MonotoneSubsequence(direction, pos, tuple(xs[p - 1] for p in pos))


# --------------------------------------------------------------------------
# matching versus trivially ordered multipartite graph


def _log2_ceil(x: int) -> int:
    return max(0, (x - 1).bit_length())


def _mvm(red: np.ndarray, m: OrderedGraph, lo: int, j: int, part: int):
    """One level of the interval recursion on [lo, lo + n^j * part)."""
    n = m.n
    L = n ** (j - 1) * part
    start = [lo + i * L for i in range(n)]  # V_{i+1} = [start[i], start[i] + L)
    image = [start[i] for i in range(n)]
    for a, b in m.sorted_edges:
        sa, sb = start[a - 1], start[b - 1]
        hits = np.argwhere(red[sa:sa + L, sb:sb + L])
        if hits.size:
            image[a - 1] = sa + int(hits[0][0])
            image[b - 1] = sb + int(hits[0][1])
            continue
        # V_a and V_b are completely blue to each other
        if j == 1:
            return "blue", [list(range(sa, sa + L)), list(range(sb, sb + L))]
        first = _mvm(red, m, sa, j - 1, part)
        if first[0] == "red":
            return first
        second = _mvm(red, m, sb, j - 1, part)
        if second[0] == "red":
            return second
        return "blue", first[1] + second[1]
    return "red", image


def multipartite_size(n: int, chi: int, part: int) -> int:
    return n ** _log2_ceil(chi) * part


def match_vs_multipartite(c: EdgeColoring, m: OrderedGraph, chi: int, part: int) -> EitherWitness:
    """Red ordered copy of matching ``m`` or blue trivially ordered K_{part,...,part}.

    The host [n^j * part] (chi rounded up to 2^j) is cut into n intervals;
    vertex i of m is tried in interval i. A matching edge with no red pair
    between its two intervals makes them fully blue and the search descends
    into both.
    """
    if not is_matching(m):
        raise GraphError("red target must be a matching")
    if chi < 1 or part < 1:
        raise GraphError("need chi >= 1 and part >= 1")
    target = complete_multipartite_trivial([part] * chi)
    need = multipartite_size(m.n, chi, part)
    if c.N < need:
        raise PreconditionError(f"need N >= {need}, got {c.N}")
    j = _log2_ceil(chi)
    if j == 0:
        return _blue(target, range(1, part + 1))
    if not m.edges:
        return _red(m, range(1, m.n + 1))
    kind, out = _mvm(c.matrix == RED, m, 1, j, part)
    if kind == "red":
        return _red(m, out)
    parts = out[:chi]
    return _blue(target, [v for p in parts for v in p])


def multipartite_embedder(m: OrderedGraph, chi: int, part: int) -> Embedder:
    target = complete_multipartite_trivial([part] * chi)
    return Embedder(
        multipartite_size(m.n, chi, part), m, target, lambda c: match_vs_multipartite(c, m, chi, part)
    )


def path_embedder(m: OrderedGraph, n: int) -> Embedder:
    """Red ``m`` or blue monotone P_n, via a red K_{|m|} in the swapped labelling."""

    def run(c: EdgeColoring) -> EitherWitness:
        w = path_vs_clique(c.swapped(), n, m.n)
        if w.kind == "red":  # red in the swapped coloring is blue here
            return _blue(monotone_path(n), w.embedding.image)
        return _red(m, w.embedding.image)

    return Embedder((n - 1) * (m.n - 1) + 1, m, monotone_path(n), run)


# --------------------------------------------------------------------------
# lexicographic products


def lex_product_embed(
    c: EdgeColoring,
    m: OrderedGraph,
    g: OrderedGraph,
    h: OrderedGraph,
    g_embedder: Embedder,
    h_embedder: Embedder,
) -> EitherWitness:
    """Red matching ``m`` or blue g.h, through the reduced coloring on blocks.

    Blocks have size R_G = g_embedder.size, and there are R_H of them. A reduced
    pair is red when any red edge joins its two blocks. A red m in the reduced
    coloring lifts one real red edge per matching edge.
    """
    if not is_matching(m):
        raise GraphError("red target must be a matching")
    if g_embedder.blue != g or h_embedder.blue != h:
        raise GraphError("embedders do not target g and h")
    if g_embedder.red != m or h_embedder.red != m:
        raise GraphError("embedders do not use the same red matching")
    rg, rh = g_embedder.size, h_embedder.size
    if c.N < rg * rh:
        raise PreconditionError(f"need N >= {rg * rh}, got {c.N}")
    target = lex_product(g, h)
    red = c.matrix == RED
    start = [1 + b * rg for b in range(rh)]
    any_red = np.zeros((rh + 1, rh + 1), dtype=bool)
    for x in range(rh):
        for y in range(x + 1, rh):
            any_red[x + 1, y + 1] = any_red[y + 1, x + 1] = red[
                start[x]:start[x] + rg, start[y]:start[y] + rg
            ].any()
    reduced = np.where(any_red, RED, BLUE).astype(np.int8)
    reduced_c = EdgeColoring(rh, 2, reduced)
    w = h_embedder(reduced_c)
    if w.kind == "red":
        blocks = [b - 1 for b in w.embedding.image]
        image = [start[b] for b in blocks]
        for a, b in m.sorted_edges:
            sa, sb = start[blocks[a - 1]], start[blocks[b - 1]]
            u, v = np.argwhere(red[sa:sa + rg, sb:sb + rg])[0]
            image[a - 1], image[b - 1] = sa + int(u), sb + int(v)
        return _red(m, image)
    image = []
    for b in w.embedding.image:
        off = start[b - 1] - 1
        inner = g_embedder(c.restrict(range(off + 1, off + rg + 1)))
        if inner.kind == "red":
            return _red(m, [v + off for v in inner.embedding.image])
        image += [v + off for v in inner.embedding.image]
    return _blue(target, image)


def bandwidth_size(n: int, k: int) -> int:
    return n ** (_log2_ceil(k) + 2)


def bandwidth_embed(c: EdgeColoring, m: OrderedGraph, k: int) -> EitherWitness:
    """Red matching ``m`` (on n vertices) or blue P_n^k.

    P_n^k sits on the first n vertices of K_k . P_n, so this is the product
    embedder with the multipartite procedure for K_k and the labelling
    argument for P_n.
    """
    n = m.n
    if k < 1:
        raise GraphError("bandwidth must be positive")
    need = bandwidth_size(n, k)
    if c.N < need:
        raise PreconditionError(f"need N >= {need}, got {c.N}")
    ge = multipartite_embedder(m, k, 1)
    he = path_embedder(m, n)
    w = lex_product_embed(c, m, ge.blue, he.blue, ge, he)
    if w.kind == "red":
        return w
    return _blue(path_power(n, k), w.embedding.image[:n])


# --------------------------------------------------------------------------
# greedy embedding or sparse sets


def lemma_size(N: int, n: int, d: int, delta: int, c: Fraction, s: int) -> int:
    """Host size (2*Delta*n*(2^s / c)^d)^s needed by the greedy-or-sparse procedure."""
    need = (2 * delta * n * (Fraction(2 ** s) / c) ** d) ** s
    return max(n, math.ceil(need))


def lemma_set_bound(N: int, n: int, d: int, delta: int, c: Fraction, s: int) -> Fraction:
    """Guaranteed set size c^(sd) N / (2^(sd+1) Delta n)^s."""
    if delta == 0:
        return Fraction(0)
    return c ** (s * d) * N / Fraction(2 ** (s * d + 1) * delta * n) ** s


def _intervals(U: np.ndarray, n: int) -> list[np.ndarray]:
    """n consecutive pieces of U; sizes floor(|U|/n), remainder to the earliest."""
    base, rem = divmod(len(U), n)
    out, at = [], 0
    for i in range(n):
        size = base + (1 if i < rem else 0)
        out.append(U[at:at + size])
        at += size
    return out


def _strong_step(a: np.ndarray, U: np.ndarray, h: OrderedGraph, order: list[int], c: Fraction):
    """The s = 1 procedure inside the ordered vertex set U.

    Returns ("embed", image) or ("split", W1, W2) where every vertex of W1 has
    fewer than c|W2| neighbours in W2.
    """
    n = h.n
    if len(U) < n:
        raise PreconditionError(f"set of size {len(U)} cannot hold {n} intervals")
    pieces = _intervals(U, n)
    cand = {v: pieces[v - 1] for v in range(1, n + 1)}
    w: dict[int, int] = {}
    num, den = c.numerator, c.denominator
    for v in order:
        later = sorted(u for u in h.neighbors(v) if u not in w)
        pool = cand[v]
        if not later:
            w[v] = int(pool[0])
            continue
        oks = []
        for u in later:
            cnt = a[np.ix_(pool, cand[u])].sum(axis=1)
            oks.append(cnt * den >= num * len(cand[u]))
        good = np.logical_and.reduce(oks)
        hit = np.flatnonzero(good)
        if hit.size:
            x = int(pool[hit[0]])
            w[v] = x
            for u in later:
                cand[u] = cand[u][a[x, cand[u]]]
            continue
        fails = [int((~ok).sum()) for ok in oks]
        best = max(range(len(later)), key=lambda k: (fails[k], -k))
        return "split", pool[~oks[best]], cand[later[best]]
    return "embed", [w[v] for v in range(1, n + 1)]


def _lemma(a, U, h, order, c: Fraction, s: int):
    if s == 1:
        r = _strong_step(a, U, h, order, c)
        if r[0] == "embed":
            return r
        w1, w2 = r[1], r[2]
        return "sets", sorted([w1, w2], key=lambda x: x[0])
    r = _strong_step(a, U, h, order, c / 2 ** s)
    if r[0] == "embed":
        return r
    w1, w2 = r[1], r[2]
    r1 = _lemma(a, w1, h, order, c, s - 1)
    if r1[0] == "embed":
        return r1
    bad = np.zeros(len(w2), dtype=bool)
    for wj in r1[1]:
        cnt = a[np.ix_(w2, wj)].sum(axis=1)
        bad |= cnt * c.denominator >= c.numerator * len(wj)
    r2 = _lemma(a, w2[~bad], h, order, c, s - 1)
    if r2[0] == "embed":
        return r2
    fam1, fam2 = r1[1], r2[1]
    return "sets", (fam1 + fam2) if w1[0] < w2[0] else (fam2 + fam1)


def strong_split(host, h: OrderedGraph, c) -> EitherWitness | tuple[tuple[int, ...], tuple[int, ...]]:
    """The internal s = 1 variant: an embedding, or (W1, W2) with one-sided degree bound."""
    a = _matrix(host)
    c = as_fraction(c)
    U = np.arange(1, a.shape[0])
    _, order = degeneracy(h)
    r = _strong_step(a, U, h, order, c)
    if r[0] == "embed":
        return _red(h, r[1])
    return tuple(int(x) for x in r[1]), tuple(int(x) for x in r[2])


def greedy_embed_or_sparse(
    host_red,
    h: OrderedGraph,
    c,
    s: int,
    check_precondition: bool = True,
) -> EitherWitness:
    """Ordered copy of ``h`` in the host, or 2^s ordered sets of red density <= c.

    ``host_red`` is an OrderedGraph on [N] (or its boolean adjacency matrix).
    The greedy embedding follows a degenerate ordering of h, vertex of label l
    going into the l-th of n near-equal intervals; a stuck step yields two
    sets with a one-sided degree bound and the procedure recurses inside each.
    """
    a = _matrix(host_red)
    N = a.shape[0] - 1
    c = as_fraction(c)
    if not 0 < c < 1:
        raise GraphError("threshold must lie in (0, 1)")
    if s < 1:
        raise GraphError("depth s must be at least 1")
    d, order = degeneracy(h)
    delta = h.max_degree
    need = lemma_size(N, h.n, d, delta, c, s)
    if check_precondition and N < need:
        raise PreconditionError(f"need N >= {need}, got {N}")
    r = _lemma(a, np.arange(1, N + 1), h, order, c, s)
    if r[0] == "embed":
        w = _red(h, r[1])
    else:
        # below the size threshold only non-emptiness is claimed
        bound = lemma_set_bound(N, h.n, d, delta, c, s) if N >= need else Fraction(1)
        sets = tuple(tuple(int(v) for v in x) for x in r[1])
        w = EitherWitness("sparse", sparse=SparseWitness(sets, c, bound))
    ok, why = w.check(a)
    if not ok:  # pragma: no cover - the construction guarantees it
        raise AssertionError(f"greedy_embed_or_sparse postcondition failed: {why}")
    return w


def corollary_size_factor(n: int, d: int, c: Fraction) -> float:
    """(n^2 c^(-7d))^(-4 log(1/c)), the guaranteed fraction of N."""
    return float((n * n * float(c) ** (-7 * d)) ** (-4 * math.log2(1 / float(c))))


def sparse_subset(
    host,
    h: OrderedGraph,
    c,
    seed: int | None = None,
    max_samples: int = 1000,
    size: int | None = None,
    check_precondition: bool = True,
) -> list[int]:
    """Vertex subset of internal density <= c in a host with no ordered copy of h.

    Runs the greedy-or-sparse procedure with c/2 and s = ceil(log(2/c)), then
    draws equal-size random subsets of the t = 2^s sets until their cross
    edges total at most (c/2) C(t,2) N'^2. N' defaults to the guaranteed
    fraction of N, rounded up, and is clipped to [1, min |W_i|].
    """
    a = _matrix(host)
    N = a.shape[0] - 1
    c = as_fraction(c)
    if not 0 < c < Fraction(1, 2):
        raise GraphError("threshold must lie in (0, 1/2)")
    s = 1
    while 2 ** s * c < 2:
        s += 1
    d, _ = degeneracy(h)
    if check_precondition:
        need = lemma_size(N, h.n, d, h.max_degree, c / 2, s)
        if N < need:
            raise PreconditionError(f"need N >= {need}, got {N}")
    w = greedy_embed_or_sparse(a, h, c / 2, s, check_precondition=False)
    if w.kind != "sparse":
        raise PreconditionError(f"host contains h at {list(w.embedding.image)}")
    sets = [np.array(x) for x in w.sparse.sets]
    ok, why = w.sparse.check(a)
    if not ok:
        raise PreconditionError(f"set family too weak at this size: {why}")
    t = len(sets)
    smallest = min(len(x) for x in sets)
    if size is None:
        size = math.ceil(corollary_size_factor(h.n, d, c) * N)
    size = max(1, min(size, smallest))
    limit = (c / 2) * (t * (t - 1) // 2) * size * size
    rng = np.random.default_rng(seed)
    for _ in range(max_samples):
        picks = [np.sort(rng.choice(x, size, replace=False)) for x in sets]
        cross = 0
        for i in range(t):
            for j in range(i + 1, t):
                cross += int(a[np.ix_(picks[i], picks[j])].sum())
        if cross <= limit:
            out = sorted(int(v) for p in picks for v in p)
            dens = internal_density(a, out)
            if dens > c:  # pragma: no cover - excluded by the counting argument
                raise AssertionError(f"subset density {dens} exceeds {c}")
            return out
    raise RuntimeError(f"no good sample in {max_samples} draws")


# --------------------------------------------------------------------------
# dense sets host a multipartite graph


class ConditionError(PreconditionError):
    """A numbered hypothesis of the dense-sets embedding fails."""


def embed_multipartite_dense(host_blue, sets: Sequence[Sequence[int]], part: int) -> Embedding:
    """Trivially ordered K_{part,...,part} with one part inside each W_i.

    Checks |W_i| >= 4 chi n, the ordering, and non-edge density <= 1/(8 chi^2 n);
    prunes vertices with many non-neighbours in another set, then embeds
    vertex by vertex. Within a part the chosen vertices are sorted, which is
    harmless since parts are independent sets.
    """
    a = _matrix(host_blue)
    chi = len(sets)
    n = part
    W = [np.array(sorted(int(v) for v in x), dtype=np.int64) for x in sets]
    for i, x in enumerate(W):
        if len(x) < 4 * chi * n:
            raise ConditionError(f"condition (i): |W_{i + 1}| = {len(x)} < {4 * chi * n}")
    for i in range(chi - 1):
        if W[i][-1] >= W[i + 1][0]:
            raise ConditionError(f"condition (ii): W_{i + 1} does not precede W_{i + 2}")
    nonadj = _complement(a)
    limit = Fraction(1, 8 * chi * chi * n)
    for i in range(chi):
        for j in range(i + 1, chi):
            dens = density(nonadj, W[i], W[j])
            if dens > limit:
                raise ConditionError(f"condition (iii): non-edge density {dens} > {limit} for ({i + 1}, {j + 1})")
    pruned = []
    for i in range(chi):
        bad = np.zeros(len(W[i]), dtype=bool)
        for j in range(chi):
            if j != i:
                miss = nonadj[np.ix_(W[i], W[j])].sum(axis=1)
                bad |= miss * 4 * chi * n >= len(W[j])
        pruned.append(W[i][~bad])
    chosen: list[list[int]] = [[] for _ in range(chi)]
    for p in range(chi):
        for _ in range(n):
            ok = np.ones(len(pruned[p]), dtype=bool)
            ok &= ~np.isin(pruned[p], chosen[p])
            for q in range(chi):
                if q != p:
                    for y in chosen[q]:
                        ok &= a[y, pruned[p]]
            hit = np.flatnonzero(ok)
            if not hit.size:  # pragma: no cover - excluded by the counting argument
                raise AssertionError("greedy multipartite embedding got stuck")
            chosen[p].append(int(pruned[p][hit[0]]))
    image = [v for p in chosen for v in sorted(p)]
    target = complete_multipartite_trivial([n] * chi)
    if not _embeds(a, target, image):  # pragma: no cover
        raise AssertionError("multipartite embedding failed verification")
    return Embedding(image)
