"""Exact ordered Ramsey computation with re-checkable certificates.

``decide`` runs a backtracking search over pair colors. Pairs are branched
on vertex by vertex, all pairs (i, j) with i < j for j = 2, 3, ..., and each
assignment is followed by unit propagation: a copy of a target that misses
exactly one still-open pair removes that color from the pair. A pair left
with a single color is assigned it, even if it lies in a later column.

No vertex symmetry breaking is done: vertex labels are part of the problem.
For diagonal queries the first pair is fixed to color 0.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import (
    EdgeColoring,
    GraphError,
    OrderedGraph,
    SizeLimitError,
    _Plan,
    _search,
    find_monochromatic_copy,
)

log = logging.getLogger(__name__)

DEFAULT_CAP_EDGES = 200
BRUTE_FORCE_LIMIT = 1 << 24
THREADS_ENV = "ORDRAMSEY_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class RamseyQuery:
    """Pattern ``targets[c]`` must not appear in color c of a coloring of [N]."""

    targets: tuple[OrderedGraph, ...]
    N: int

    def __init__(self, targets: Sequence[OrderedGraph], N: int):
        object.__setattr__(self, "targets", tuple(targets))
        object.__setattr__(self, "N", int(N))
        if len(self.targets) < 2:
            raise GraphError("a query needs a target for each of q >= 2 colors")
        if self.N < 1:
            raise GraphError("N must be positive")

    @property
    def q(self) -> int:
        return len(self.targets)

    @property
    def diagonal(self) -> bool:
        return all(t == self.targets[0] for t in self.targets)

    def to_dict(self) -> dict:
        return {"targets": [t.to_dict() for t in self.targets], "N": self.N}

    @classmethod
    def from_dict(cls, d: dict) -> "RamseyQuery":
        return cls([OrderedGraph.from_dict(t) for t in d["targets"]], d["N"])


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {"nodes": self.nodes, "prunes": self.prunes, "wall_time": round(self.wall_time, 6)}


@dataclass
class Certificate:
    query: RamseyQuery
    verdict: str  # "avoidable" | "unavoidable"
    witness: EdgeColoring | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def avoidable(self) -> bool:
        return self.verdict == "avoidable"

    def to_dict(self) -> dict:
        return {
            "query": self.query.to_dict(),
            "verdict": self.verdict,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "stats": self.stats.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        w = d.get("witness")
        st = d.get("stats") or {}
        return cls(
            query=RamseyQuery.from_dict(d["query"]),
            verdict=d["verdict"],
            witness=EdgeColoring.from_dict(w) if w is not None else None,
            stats=SearchStats(st.get("nodes", 0), st.get("prunes", 0), st.get("wall_time", 0.0)),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()) + "\n")


def pair_order(N: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(2, N + 1) for i in range(1, j)]


def witness_avoids(c: EdgeColoring, targets: Sequence[OrderedGraph]) -> tuple[bool, str]:
    """Check a coloring against every target; report the first violation."""
    if c.q != len(targets):
        return False, f"coloring has q={c.q} but {len(targets)} targets were given"
    for color, t in enumerate(targets):
        emb = find_monochromatic_copy(c, color, t)
        if emb is not None:
            return False, f"color {color} contains target at {list(emb.image)}"
    return True, "ok"


class _Searcher:
    """Backtracking over pair colors with unit propagation.

    Every pair keeps a domain of still-allowed colors. When a pair receives
    color c, the searcher looks for copies of target c through that pair
    whose other pairs all have color c (a conflict) or all but one, which
    is still open: c is then removed from that pair's domain, and a pair
    left with one color is assigned it. Copies are searched with the new
    pair fixed onto each pattern edge in turn, so forcing pairs of later
    columns keeps the completeness check exhaustive. The ``naive`` mode
    turns propagation off and rescans each color class from scratch after
    every assignment; it exists for differential testing.
    """

    def __init__(self, query: RamseyQuery, naive: bool = False):
        self.q = query.q
        self.N = query.N
        self.targets = query.targets
        self.naive = naive
        self.pairs = pair_order(self.N)
        self.pid = {p: k for k, p in enumerate(self.pairs)}
        N1 = self.N + 1
        full = (1 << N1) - 2
        self.adj = [[0] * N1 for _ in range(self.q)]
        # open[c][v]: unassigned pairs at v whose domain still has color c
        self.open = [[full & ~(1 << v) if v else 0 for v in range(N1)] for _ in range(self.q)]
        self.dom = [(1 << self.q) - 1] * len(self.pairs)
        self.colors = [-1] * len(self.pairs)
        self.trail: list[tuple] = []
        self.stats = SearchStats()
        self.plans = [_Plan(t) for t in self.targets]
        self.anchor_edges = [t.sorted_edges for t in self.targets]
        self.symmetric = query.diagonal

    # -- trail-backed updates

    def _assign(self, k: int, col: int) -> None:
        i, j = self.pairs[k]
        self.trail.append(("a", k, self.dom[k]))
        self.colors[k] = col
        self.adj[col][i] |= 1 << j
        self.adj[col][j] |= 1 << i
        for c in range(self.q):
            if self.dom[k] >> c & 1:
                self.open[c][i] &= ~(1 << j)
                self.open[c][j] &= ~(1 << i)
        self.dom[k] = 1 << col

    def _remove(self, k: int, col: int) -> None:
        i, j = self.pairs[k]
        self.trail.append(("r", k, col))
        self.dom[k] &= ~(1 << col)
        self.open[col][i] &= ~(1 << j)
        self.open[col][j] &= ~(1 << i)

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            op, k, x = self.trail.pop()
            i, j = self.pairs[k]
            if op == "a":
                col = self.colors[k]
                self.colors[k] = -1
                self.adj[col][i] &= ~(1 << j)
                self.adj[col][j] &= ~(1 << i)
                self.dom[k] = x
                for c in range(self.q):
                    if x >> c & 1:
                        self.open[c][i] |= 1 << j
                        self.open[c][j] |= 1 << i
            else:
                self.dom[k] |= 1 << x
                self.open[x][i] |= 1 << j
                self.open[x][j] |= 1 << i

    # -- copy search

    def _near_copies(self, col: int, i: int, j: int) -> set[int] | None:
        """Open pairs that would complete a copy through (i, j); None on a full copy."""
        plan = self.plans[col]
        n = plan.n
        adj, opn = self.adj[col], self.open[col]
        N = self.N
        back, fwd = plan.back, plan.fwd
        pid = self.pid
        img = [0] * (n + 1)
        found: set[int] = set()
        full_copy = False

        for a, b in self.anchor_edges[col]:
            # anchored labels go to i and j; the rest need room around them
            if i < a or j - i < b - a or N - j < n - b:
                continue
            fixed = [0] * (n + 1)
            fixed[a], fixed[b] = i, j
            upper = [0] * (n + 1)
            for k in range(1, n + 1):
                if k < a:
                    upper[k] = i - (a - k)
                elif k < b:
                    upper[k] = j - (b - k)
                else:
                    upper[k] = N - (n - k)

            def rec(k: int, prev: int, miss: int) -> bool:
                nonlocal full_copy
                if k > n:
                    if miss < 0:
                        full_copy = True
                        return True
                    found.add(miss)
                    return False
                v = fixed[k]
                if v:
                    if v <= prev:
                        return False
                    cand = 1 << v
                else:
                    hi = upper[k]
                    if prev >= hi:
                        return False
                    cand = ((1 << (hi - prev)) - 1) << (prev + 1)
                strict = cand
                for u in back[k]:
                    x = adj[img[u]]
                    strict &= x
                    cand &= x | opn[img[u]]
                for u in fwd[k]:
                    w = fixed[u]
                    if w:
                        cand &= adj[w] | opn[w]
                if miss >= 0:
                    cand = strict
                while cand:
                    low = cand & -cand
                    x = low.bit_length() - 1
                    img[k] = x
                    m = miss
                    if not (strict & low):
                        gaps = [img[u] for u in back[k] if not (adj[img[u]] >> x) & 1]
                        if len(gaps) > 1:
                            cand ^= low
                            continue
                        m = pid[(gaps[0], x)]
                    if rec(k + 1, x, m):
                        return True
                    cand ^= low
                return False

            if rec(1, 0, -1):
                return None
        return found

    def _has_copy(self, col: int) -> bool:
        for _ in _search(self.adj[col], self.N, self.targets[col]):
            return True
        return False

    def _propagate(self, queue: list[int]) -> bool:
        """Process newly assigned pairs; False on a conflict."""
        while queue:
            k = queue.pop()
            col = self.colors[k]
            i, j = self.pairs[k]
            self.stats.nodes += 1
            if self.naive:
                if self._has_copy(col):
                    self.stats.prunes += 1
                    return False
                continue
            hits = self._near_copies(col, i, j)
            if hits is None:
                self.stats.prunes += 1
                return False
            for k2 in hits:
                if not self.dom[k2] >> col & 1:
                    continue
                self._remove(k2, col)
                d = self.dom[k2]
                if d == 0:
                    self.stats.prunes += 1
                    return False
                if d & (d - 1) == 0:
                    self._assign(k2, d.bit_length() - 1)
                    queue.append(k2)
        return True

    def _try(self, k: int, col: int) -> bool:
        if not self.dom[k] >> col & 1:
            return False
        self._assign(k, col)
        return self._propagate([k])

    def run(self, prefix: Sequence[int] = ()) -> bool:
        """True if an avoiding completion exists; fills ``self.colors``."""
        for k, col in enumerate(prefix):
            if self.colors[k] >= 0:
                if self.colors[k] != col:
                    return False
                continue
            if not self._try(k, col):
                return False
        return self._rec(len(prefix))

    def _rec(self, k: int) -> bool:
        while k < len(self.pairs) and self.colors[k] >= 0:
            k += 1
        if k == len(self.pairs):
            return True
        colors = range(1) if (k == 0 and self.symmetric) else range(self.q)
        for col in colors:
            mark = len(self.trail)
            if self._try(k, col) and self._rec(k + 1):
                return True
            self._undo(mark)
        return False

    def coloring(self) -> EdgeColoring:
        m = np.full((self.N + 1, self.N + 1), -1, dtype=np.int8)
        for (i, j), col in zip(self.pairs, self.colors):
            m[i, j] = m[j, i] = col
        return EdgeColoring(self.N, self.q, m)


def _edgeless_hit(query: RamseyQuery) -> bool:
    """An edgeless target appears in its color as soon as N >= its size."""
    return any(not t.edges and query.N >= t.n for t in query.targets)


def _run_subtree(args):
    query_dict, prefix, naive = args
    query = RamseyQuery.from_dict(query_dict)
    s = _Searcher(query, naive)
    ok = s.run(prefix)
    return ok, (s.coloring().pair_colors() if ok else None), s.stats.nodes, s.stats.prunes


def decide(
    query: RamseyQuery,
    cap_edges: int = DEFAULT_CAP_EDGES,
    threads: int | None = None,
    naive: bool = False,
    split_depth: int = 6,
) -> Certificate:
    """Decide whether some coloring of [N] avoids every target in its color."""
    N = query.N
    n_pairs = N * (N - 1) // 2
    if n_pairs > cap_edges:
        raise SizeLimitError(
            f"N={N} needs {n_pairs} pair variables, cap is {cap_edges}; use sat_export instead"
        )
    t0 = time.perf_counter()
    stats = SearchStats()
    if _edgeless_hit(query):
        stats.wall_time = time.perf_counter() - t0
        return Certificate(query, "unavoidable", None, stats)
    if N == 1:
        w = EdgeColoring(1, query.q, np.full((2, 2), -1, dtype=np.int8))
        stats.wall_time = time.perf_counter() - t0
        return Certificate(query, "avoidable", w, stats)

    threads = default_threads() if threads is None else max(1, threads)
    if threads == 1 or n_pairs <= split_depth + 2:
        s = _Searcher(query, naive)
        ok = s.run()
        stats = s.stats
        witness = s.coloring() if ok else None
    else:
        ok, witness, stats = _decide_parallel(query, threads, naive, split_depth)
    stats.wall_time = time.perf_counter() - t0
    if ok:
        good, msg = witness_avoids(witness, query.targets)
        if not good:  # pragma: no cover - would be a search bug
            raise AssertionError(f"search returned a bad witness: {msg}")
        return Certificate(query, "avoidable", witness, stats)
    return Certificate(query, "unavoidable", None, stats)


def _decide_parallel(query: RamseyQuery, threads: int, naive: bool, depth: int):
    """Split on the first ``depth`` pair colors; the lowest avoidable prefix wins.

    Prefixes are enumerated in the same order the sequential search would
    visit them, so the reported witness does not depend on scheduling.
    """
    q = query.q
    first = [0] if query.diagonal else list(range(q))
    prefixes = [
        (f,) + rest for f in first for rest in itertools.product(range(q), repeat=depth - 1)
    ]
    stats = SearchStats()
    qd = query.to_dict()
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_run_subtree, [(qd, p, naive) for p in prefixes]))
    for ok, colors, nodes, prunes in results:
        stats.nodes += nodes
        stats.prunes += prunes
    for ok, colors, _, _ in results:
        if ok:
            return True, EdgeColoring.from_pairs(query.N, q, colors), stats
    return False, None, stats


# --------------------------------------------------------------------------
# independent oracle


def brute_force_oracle(targets: Sequence[OrderedGraph], N: int) -> bool:
    """True iff every q-coloring of [N] has target c in color c for some c.

    Enumerates all colorings as one integer array; for each target and each
    increasing injection of its vertices it marks the colorings in which all
    mapped pairs carry that color. Shares no code with ``decide``.
    """
    q = len(targets)
    if q < 2:
        raise GraphError("need q >= 2 targets")
    pairs = list(itertools.combinations(range(1, N + 1), 2))
    total = q ** len(pairs)
    if total > BRUTE_FORCE_LIMIT:
        raise SizeLimitError(f"{total} colorings exceed the brute-force limit {BRUTE_FORCE_LIMIT}")
    index = {p: k for k, p in enumerate(pairs)}
    codes = np.arange(total, dtype=np.int64)
    digit = [(codes // (q ** k)) % q for k in range(len(pairs))]
    hit = np.zeros(total, dtype=bool)
    for color, t in enumerate(targets):
        if t.n > N:
            continue
        for img in itertools.combinations(range(1, N + 1), t.n):
            mask = np.ones(total, dtype=bool)
            for a, b in t.edges:
                mask &= digit[index[(img[a - 1], img[b - 1])]] == color
            hit |= mask
            if hit.all():
                return True
    return bool(hit.all())


# --------------------------------------------------------------------------
# search for the Ramsey number


@dataclass
class RamseyResult:
    value: int | None
    lower: int  # every N < lower is avoidable (witness at lower - 1)
    upper: int | None  # unavoidable at upper, if reached
    avoiding: Certificate | None
    unavoidable: Certificate | None

    @property
    def closed(self) -> bool:
        return self.value is not None


def ramsey_number(
    targets: Sequence[OrderedGraph],
    start_N: int = 1,
    cap_edges: int = DEFAULT_CAP_EDGES,
    threads: int | None = None,
) -> RamseyResult:
    """Smallest N whose query is unavoidable, with certificates on both sides."""
    last_avoid = None
    N = max(1, start_N)
    while True:
        if N * (N - 1) // 2 > cap_edges:
            return RamseyResult(None, N, None, last_avoid, None)
        cert = decide(RamseyQuery(targets, N), cap_edges=cap_edges, threads=threads)
        log.info("N=%d %s (%d nodes)", N, cert.verdict, cert.stats.nodes)
        if not cert.avoidable:
            if last_avoid is None and N > 1:
                # start_N was already unavoidable; walk down for the witness
                below = decide(RamseyQuery(targets, N - 1), cap_edges=cap_edges, threads=threads)
                if not below.avoidable:
                    return ramsey_number(targets, 1, cap_edges, threads)
                last_avoid = below
            return RamseyResult(N, N, N, last_avoid, cert)
        last_avoid = cert
        N += 1


# --------------------------------------------------------------------------
# SAT export


def sat_clauses(query: RamseyQuery) -> tuple[list[tuple[int, int]], list[list[int]]]:
    """Variables (one per pair, true = color 0) and clauses forbidding each copy."""
    if query.q != 2:
        raise GraphError("CNF export supports two colors only")
    pairs = list(itertools.combinations(range(1, query.N + 1), 2))
    var = {p: k + 1 for k, p in enumerate(pairs)}
    clauses = []
    for color, t in enumerate(query.targets):
        sign = -1 if color == 0 else 1
        if t.n > query.N:
            continue
        edges = t.sorted_edges
        for img in itertools.combinations(range(1, query.N + 1), t.n):
            clauses.append([sign * var[(img[a - 1], img[b - 1])] for a, b in edges])
    return pairs, clauses


def sat_export(query: RamseyQuery, path: str | Path | None = None) -> str:
    """Write DIMACS CNF; satisfiable iff the query is avoidable."""
    pairs, clauses = sat_clauses(query)
    lines = [
        "c ordered Ramsey avoidance",
        f"c N={query.N} q=2; variable true means color 0",
    ]
    for k, t in enumerate(query.targets):
        lines.append(f"c target{k} {json.dumps(t.to_dict(), separators=(',', ':'))}")
    lines += [f"c var {k + 1} = pair {i} {j}" for k, (i, j) in enumerate(pairs)]
    lines.append(f"p cnf {len(pairs)} {len(clauses)}")
    lines += [" ".join(map(str, cl + [0])) for cl in clauses]
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def parse_dimacs_model(text: str) -> list[int]:
    """Literals from solver output ("v ..." lines or a bare literal list)."""
    lits = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "cs":
            continue
        if line.startswith("v"):
            line = line[1:]
        lits += [int(x) for x in line.split()]
    return [x for x in lits if x != 0]


def coloring_from_model(N: int, literals: Sequence[int]) -> EdgeColoring:
    pairs = list(itertools.combinations(range(1, N + 1), 2))
    truth = {abs(x): x > 0 for x in literals}
    colors = [0 if truth.get(k + 1, False) else 1 for k in range(len(pairs))]
    return EdgeColoring.from_pairs(N, 2, colors)


# --------------------------------------------------------------------------
# certificate verification


@dataclass
class Verification:
    ok: bool
    status: str  # "verified" | "search-trusted" | "invalid"
    detail: str

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate_data(d: dict) -> Verification:
    try:
        cert = Certificate.from_dict(d)
    except (KeyError, TypeError, GraphError) as exc:
        return Verification(False, "invalid", f"malformed certificate: {exc}")
    query = cert.query
    if cert.verdict == "avoidable":
        w = cert.witness
        if w is None:
            return Verification(False, "invalid", "avoidable certificate without a witness")
        if w.N != query.N:
            return Verification(False, "invalid", f"witness has N={w.N}, query has N={query.N}")
        good, msg = witness_avoids(w, query.targets)
        if not good:
            return Verification(False, "invalid", msg)
        return Verification(True, "verified", "witness avoids every target")
    if cert.verdict == "unavoidable":
        pairs = query.N * (query.N - 1) // 2
        if query.q ** pairs <= BRUTE_FORCE_LIMIT:
            if brute_force_oracle(query.targets, query.N):
                return Verification(True, "verified", "exhaustive enumeration agrees")
            return Verification(False, "invalid", "an avoiding coloring exists")
        return Verification(True, "search-trusted", "outside brute-force range")
    return Verification(False, "invalid", f"unknown verdict {cert.verdict!r}")


def verify_certificate(cert_path: str | Path) -> Verification:
    try:
        d = json.loads(Path(cert_path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        return Verification(False, "invalid", f"cannot read certificate: {exc}")
    return verify_certificate_data(d)


def query_hash(targets: Sequence[OrderedGraph]) -> str:
    blob = json.dumps([t.to_dict() for t in targets], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]

