"""Triple colorings: cups and caps, tight paths, Erdos-Rado extraction, small searches."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import BLUE, RED, EdgeColoring, Embedding, GraphError, SizeLimitError
from .generators import TripleSystem

DEFAULT_R3_CAP = 8


@dataclass(frozen=True)
class TripleColoring:
    """q-coloring of the increasing triples of {1..N}.

    ``array[i, j, k]`` holds the color for i < j < k; other entries are -1.
    """

    N: int
    q: int
    array: np.ndarray

    def __init__(self, N: int, q: int, array: np.ndarray):
        a = np.array(array, dtype=np.int8, copy=True)
        a.setflags(write=False)
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "array", a)

    @classmethod
    def from_function(cls, N: int, q: int, fn) -> "TripleColoring":
        a = np.full((N + 1,) * 3, -1, dtype=np.int8)
        for i, j, k in itertools.combinations(range(1, N + 1), 3):
            col = fn(i, j, k)
            if not 0 <= col < q:
                raise GraphError(f"color {col} of {(i, j, k)} outside 0..{q - 1}")
            a[i, j, k] = col
        return cls(N, q, a)

    @classmethod
    def from_list(cls, N: int, q: int, colors: Sequence[int]) -> "TripleColoring":
        triples = list(itertools.combinations(range(1, N + 1), 3))
        if len(colors) != len(triples):
            raise GraphError(f"expected {len(triples)} triple colors, got {len(colors)}")
        lookup = dict(zip(triples, colors))
        return cls.from_function(N, q, lambda i, j, k: int(lookup[(i, j, k)]))

    @classmethod
    def random(cls, N: int, q: int = 2, seed: int | None = None) -> "TripleColoring":
        rng = np.random.default_rng(seed)
        colors = rng.integers(0, q, size=math.comb(N, 3)).tolist()
        return cls.from_list(N, q, colors)

    def __call__(self, i: int, j: int, k: int) -> int:
        i, j, k = sorted((i, j, k))
        return int(self.array[i, j, k])

    def colors(self) -> list[int]:
        return [int(self.array[t]) for t in itertools.combinations(range(1, self.N + 1), 3)]

    def to_dict(self) -> dict:
        return {"N": self.N, "q": self.q, "colors": self.colors()}

    @classmethod
    def from_dict(cls, d: dict) -> "TripleColoring":
        return cls.from_list(d["N"], d["q"], d["colors"])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TripleColoring):
            return NotImplemented
        return self.N == other.N and self.q == other.q and np.array_equal(self.array, other.array)

    def __hash__(self) -> int:
        return hash((self.N, self.q, self.array.tobytes()))


# --------------------------------------------------------------------------
# cups and caps


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))

    @classmethod
    def parse(cls, line: str) -> "Point":
        """Parse a CSV line ``x,y`` with rationals written as ``p/q``."""
        xs, ys = line.split(",")
        return cls(Fraction(xs.strip()), Fraction(ys.strip()))


def read_points(text: str) -> list[Point]:
    return [Point.parse(ln) for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def orientation(p: Point, q: Point, r: Point) -> Fraction:
    """Cross product (q - p) x (r - p); positive when r lies left of p -> q."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def capcup_coloring(points: Sequence[Point]) -> TripleColoring:
    """Color a triple red (0) if it is a cup, blue (1) if it is a cap."""
    pts = list(points)
    for a, b in zip(pts, pts[1:]):
        if a.x >= b.x:
            raise GraphError(f"x-coordinates must increase strictly ({a.x} then {b.x})")

    def color(i: int, j: int, k: int) -> int:
        o = orientation(pts[i - 1], pts[j - 1], pts[k - 1])
        if o == 0:
            raise GraphError(f"points {i}, {j}, {k} are collinear")
        return RED if o > 0 else BLUE

    return TripleColoring.from_function(len(pts), 2, color)


# --------------------------------------------------------------------------
# tight paths


def _tight_path_table(c: TripleColoring, color: int):
    """best[j, k]: most vertices on a monotone tight path of ``color`` ending j, k."""
    N = c.N
    best = np.zeros((N + 1, N + 1), dtype=np.int64)
    prev = np.zeros((N + 1, N + 1), dtype=np.int64)
    for k in range(1, N + 1):
        for j in range(1, k):
            best[j, k] = 2
            for i in range(1, j):
                if c.array[i, j, k] == color and best[i, j] + 1 > best[j, k]:
                    best[j, k] = best[i, j] + 1
                    prev[j, k] = i
    return best, prev


def longest_tight_path(c: TripleColoring, color: int) -> int:
    if c.N < 2:
        return c.N
    best, _ = _tight_path_table(c, color)
    return int(best.max())


def find_monochromatic_tight_path(c: TripleColoring, n: int) -> tuple[int, Embedding] | None:
    """(color, embedding) of a monochromatic monotone tight path on n vertices, or None."""
    if n <= 2:
        if c.N >= n:
            return RED, Embedding(range(1, n + 1))
        return None
    for color in range(c.q):
        best, prev = _tight_path_table(c, color)
        hits = np.argwhere(best >= n)
        if hits.size == 0:
            continue
        j, k = (int(x) for x in hits[np.lexsort((hits[:, 0], hits[:, 1]))][0])
        path = [k, j]
        while len(path) < n:
            a, b = path[-1], path[-2]
            path.append(int(prev[a, b]))
        image = path[::-1]
        emb = Embedding(image)
        assert all(c.array[image[t], image[t + 1], image[t + 2]] == color for t in range(n - 2))
        return color, emb
    return None


# --------------------------------------------------------------------------
# Erdos-Rado extraction


def erdos_rado_step(c: TripleColoring, t: int) -> tuple[list[int], EdgeColoring]:
    """Vertices v_1 < ... < v_{t+1} and a pair coloring chi of [t].

    For i < j <= t and every later sequence vertex w the triple {v_i, v_j, w}
    has color chi(i, j). Candidate sets are halved by majority color (ties to
    red) and v_{t+1} is the smallest survivor.
    """
    if c.q != 2:
        raise GraphError("Erdos-Rado step is implemented for two colors")
    if t < 2:
        raise GraphError("need t >= 2")
    need = 2 ** math.comb(t, 2) + 1
    if c.N < need:
        raise GraphError(f"need N >= {need}, got {c.N}")
    v = [1]
    V = list(range(2, c.N + 1))
    chi = np.full((t + 1, t + 1), -1, dtype=np.int8)
    for ell in range(1, t):
        nxt = V[0]
        v.append(nxt)
        cand = V[1:]
        for j in range(ell):  # vertex v_{j+1}
            red = [w for w in cand if c(v[j], nxt, w) == RED]
            if 2 * len(red) >= len(cand):
                cand, col = red, RED
            else:
                cand, col = [w for w in cand if c(v[j], nxt, w) != RED], BLUE
            chi[j + 1, ell + 1] = chi[ell + 1, j + 1] = col
        V = cand
        floor = 2 ** (math.comb(t, 2) - math.comb(ell + 1, 2))
        if len(V) < floor:  # pragma: no cover - the halving argument rules this out
            raise AssertionError(f"candidate set shrank to {len(V)} < {floor}")
    v.append(V[0])
    return v, EdgeColoring(t, 2, chi)


def erdos_rado_holds(c: TripleColoring, v: Sequence[int], chi: EdgeColoring) -> bool:
    """Exhaustive check of the quantified triple-color property."""
    t = len(v) - 1
    for i in range(t):
        for j in range(i + 1, t):
            for k in range(j + 1, t + 1):
                if c(v[i], v[j], v[k]) != chi(i + 1, j + 1):
                    return False
    return True


# --------------------------------------------------------------------------
# small exact searches


def _triple_copy(arr: np.ndarray, N: int, pattern: TripleSystem, color: int, fixed: dict[int, int]) -> list[int] | None:
    """Ordered copy of ``pattern`` whose triples all have ``color`` in ``arr``."""
    n = pattern.n
    closing: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for a, b, d in pattern.sorted_triples:
        closing[d].append((a, b))
    img = [0] * (n + 1)

    def rec(k: int, prev: int) -> bool:
        if k > n:
            return True
        if k in fixed:
            options = [fixed[k]] if fixed[k] > prev else []
        else:
            hi = min([fixed[x] - (x - k) for x in fixed if x > k] + [N - (n - k)])
            options = range(prev + 1, hi + 1)
        for x in options:
            img[k] = x
            if all(arr[img[a], img[b], x] == color for a, b in closing[k]) and rec(k + 1, x):
                return True
        return False

    return img[1:] if rec(1, 0) else None


def find_monochromatic_triple_copy(c: TripleColoring, color: int, pattern: TripleSystem) -> Embedding | None:
    img = _triple_copy(c.array, c.N, pattern, color, {})
    return None if img is None else Embedding(img)


def _colex_triples(N: int) -> list[tuple[int, int, int]]:
    return sorted(itertools.combinations(range(1, N + 1), 3), key=lambda t: (t[2], t[1], t[0]))


@dataclass(frozen=True)
class Ramsey3Result:
    unavoidable: bool
    witness: TripleColoring | None
    nodes: int


def ramsey3_decide(
    targets: Sequence[TripleSystem],
    N: int,
    cap: int = DEFAULT_R3_CAP,
) -> Ramsey3Result:
    """Does every coloring of the triples of [N] contain target c in color c?

    Backtracks over triples ordered by largest vertex; after each assignment
    only copies through the new triple are searched. When all targets are
    equal the first triple is fixed to color 0.
    """
    if N > cap:
        raise SizeLimitError(f"N = {N} exceeds the cap {cap}")
    q = len(targets)
    if q < 2:
        raise GraphError("need a target per color, at least two")
    triples = _colex_triples(N)
    arr = np.full((N + 1,) * 3, -1, dtype=np.int8)
    symmetric = all(t == targets[0] for t in targets)
    nodes = 0
    for color, t in enumerate(targets):
        if not t.triples and t.n <= N:
            return Ramsey3Result(True, None, 0)

    def hits(color: int, tri: tuple[int, int, int]) -> bool:
        pat = targets[color]
        for a, b, d in pat.sorted_triples:
            fixed = {a: tri[0], b: tri[1], d: tri[2]}
            if _triple_copy(arr, N, pat, color, fixed) is not None:
                return True
        return False

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == len(triples):
            return True
        tri = triples[k]
        colors = [0] if (symmetric and k == 0) else range(q)
        for col in colors:
            nodes += 1
            arr[tri] = col
            if not hits(col, tri) and rec(k + 1):
                return True
            arr[tri] = -1
        return False

    if rec(0):
        w = TripleColoring(N, q, arr)
        for color, t in enumerate(targets):
            if find_monochromatic_triple_copy(w, color, t) is not None:  # pragma: no cover
                raise AssertionError("witness contains a target")
        return Ramsey3Result(False, w, nodes)
    return Ramsey3Result(True, None, nodes)


def tight_path_brute_force(c: TripleColoring, n: int) -> bool:
    """Whether some n-subset is a monochromatic tight path, by enumeration."""
    for sub in itertools.combinations(range(1, c.N + 1), n):
        cols = {c(sub[t], sub[t + 1], sub[t + 2]) for t in range(n - 2)}
        if len(cols) <= 1:
            return True
    return False

