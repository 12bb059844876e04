"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line (with its pinned tolerance and time
budget) that conftest prints in the terminal summary.
"""

import itertools
import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from ordramsey.constructions import es_path_coloring, offdiagonal_assembly, spread_pattern, verify_assembly
from ordramsey.core import BLUE, RED, EdgeColoring, OrderedGraph, degeneracy, find_monochromatic_copy, longest_monotone_path
from ordramsey.embedders import (
    bandwidth_embed,
    bandwidth_size,
    greedy_embed_or_sparse,
    lemma_size,
    lex_product_embed,
    match_vs_multipartite,
    multipartite_embedder,
    multipartite_size,
    path_embedder,
)
from ordramsey.experiments import mc_discrepancy, mc_jumbled
from ordramsey.generators import (
    TripleSystem,
    all_graphs,
    complete,
    complete_multipartite_trivial,
    complete_triples,
    is_jumbled,
    jumbled_matching,
    lex_product,
    monotone_path,
    path_power,
    random_matching,
    s_family,
    tight_path_3,
)
from ordramsey.hypergraph import TripleColoring, erdos_rado_step, ramsey3_decide
from ordramsey.lll import BadEventFamily, ResampleCapExceeded, moser_tardos_coloring, verify_coloring
from ordramsey.solver import (
    RamseyQuery,
    brute_force_oracle,
    coloring_from_model,
    decide,
    ramsey_number,
    sat_clauses,
    verify_certificate_data,
    witness_avoids,
)

from conftest import ACCEPTANCE

# pinned tolerances and budgets
BUDGET_1 = 300.0
BUDGET_2 = 600.0
BUDGET_3 = 60.0
BUDGET_4 = 60.0
BUDGET_5 = 1800.0
LEMMA_INSTANCES = 500
EMBEDDER_TRIALS = 1000
BUDGET_7 = 600.0
ER_COLORINGS = 100
BUDGET_8 = 60.0
LLL_SEEDS = range(10)
LLL_CAP = 20_000  # per seed; see the ledger for why the default 10^6 is not used
MC_N, MC_TRIALS, MC_SEED, MC_MIN_FRACTION = 1024, 500, 7, 0.95
DISC_H = range(2, 8)
DISC_FACTOR = 2


@contextmanager
def criterion(label: str, budget: float | None = None, gating: bool = True):
    tag = "" if gating else " (non-gating)"
    info: dict = {"detail": ""}
    t0 = time.perf_counter()
    try:
        yield info
    except BaseException as exc:
        dt = time.perf_counter() - t0
        msg = info["detail"] or f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        status = "SKIP" if isinstance(exc, pytest.skip.Exception) else "FAIL"
        ACCEPTANCE.append(f"{status}  {label}{tag}: {msg} [{dt:.1f}s]")
        raise
    dt = time.perf_counter() - t0
    if budget is not None and dt > budget:
        ACCEPTANCE.append(f"FAIL  {label}{tag}: {info['detail']} [{dt:.1f}s > budget {budget:.0f}s]")
        pytest.fail(f"{label} took {dt:.1f}s, budget {budget}s")
    limit = f", budget {budget:.0f}s" if budget is not None else ""
    ACCEPTANCE.append(f"PASS  {label}{tag}: {info['detail']} [{dt:.1f}s{limit}]")


def red_pairs_ok(c: EdgeColoring, color: int, pattern: OrderedGraph, image) -> bool:
    """Direct check that ``image`` is an increasing copy of ``pattern`` in ``color``."""
    img = list(image)
    if len(img) != pattern.n or img != sorted(set(img)) or img[0] < 1 or img[-1] > c.N:
        return False
    return all(c(img[a - 1], img[b - 1]) == color for a, b in pattern.edges)


# 1. diagonal paths


def test_criterion_01_paths():
    with criterion("#1 r_<(P_n) = (n-1)^2+1 for n=2,3,4", BUDGET_1) as info:
        got = []
        for n in (2, 3, 4):
            r = ramsey_number([monotone_path(n)] * 2)
            got.append(r.value)
            assert r.value == (n - 1) ** 2 + 1
            if r.value > 1:
                assert verify_certificate_data(r.avoiding.to_dict()).status == "verified"
        info["detail"] = f"values {got}, witnesses at N-1 verified"


def test_criterion_01_stretch_p5_via_sat():
    with criterion("#1 stretch r_<(P_5) = 17 via CNF export", gating=False) as info:
        solvers = pytest.importorskip("pysat.solvers")
        p5 = monotone_path(5)
        _, cl16 = sat_clauses(RamseyQuery([p5, p5], 16))
        with solvers.Solver(name="cadical153", bootstrap_with=cl16) as s:
            assert s.solve()
            w = coloring_from_model(16, s.get_model())
        assert witness_avoids(w, [p5, p5])[0]
        _, cl17 = sat_clauses(RamseyQuery([p5, p5], 17))
        # color symmetry: the pair (1, 2) may be fixed to color 0
        with solvers.Solver(name="cadical153", bootstrap_with=cl17 + [[1]]) as s:
            assert not s.solve()
        info["detail"] = "N=16 satisfiable with a verified witness, N=17 unsatisfiable"


# 2. paths versus cliques


def test_criterion_02_path_vs_clique():
    with criterion("#2 r_<(P_m, K_n) = (m-1)(n-1)+1 for m,n in {2,3,4}", BUDGET_2) as info:
        table = {}
        for m, n in itertools.product((2, 3, 4), repeat=2):
            r = ramsey_number([monotone_path(m), complete(n)])
            table[(m, n)] = r.value
            assert r.value == (m - 1) * (n - 1) + 1, (m, n, r.value)
        info["detail"] = "all 9 values exact: " + " ".join(f"{m}{n}:{v}" for (m, n), v in table.items())


# 3. triangle


def test_criterion_03_triangle():
    with criterion("#3 r_<(K_3) = 6", BUDGET_3) as info:
        r = ramsey_number([complete(3)] * 2)
        assert r.value == 6
        info["detail"] = "value 6"


# 4. Erdos-Szekeres colorings


def test_criterion_04_es_colorings():
    with criterion("#4 es_path_coloring P_n-free in every color", BUDGET_4) as info:
        cases = [(n, 2) for n in range(2, 9)] + [(n, 3) for n in range(2, 5)]
        for n, q in cases:
            c = es_path_coloring(n, q)
            assert c.N == (n - 1) ** q
            for color in range(q):
                assert longest_monotone_path(c, color) < n
                if c.N <= 30:
                    assert find_monochromatic_copy(c, color, monotone_path(n)) is None
        info["detail"] = f"{len(cases)} (n, q) cases, N = (n-1)^q"


# 5. oracle grid


def test_criterion_05_oracle_grid():
    with criterion("#5 decide == brute_force_oracle on patterns <= 4 vertices, N <= 6", BUDGET_5) as info:
        patterns = [g for n in range(1, 5) for g in all_graphs(n)]
        disagree = []
        total = 0
        for a, b in itertools.product(patterns, repeat=2):
            for N in range(1, 7):
                total += 1
                fast = not decide(RamseyQuery([a, b], N)).avoidable
                if fast != brute_force_oracle([a, b], N):
                    disagree.append((a.sorted_edges, b.sorted_edges, N))
        info["detail"] = f"{len(disagree)} disagreements over {total} queries ({len(patterns)} patterns)"
        assert not disagree, disagree[:5]


# 6. greedy embedding or sparse sets


LEMMA_PATTERNS = {
    "K2": complete(2),
    "P3": monotone_path(3),
    "M2": OrderedGraph(4, [(1, 3), (2, 4)]),
    "K3": complete(3),
    "P4": monotone_path(4),
    "S3": OrderedGraph(4, [(1, 2), (1, 3), (1, 4)]),
}
LEMMA_CONFIGS = [
    (name, c, s)
    for name in LEMMA_PATTERNS
    for c in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 4))
    for s in (1, 2)
    if lemma_size(0, LEMMA_PATTERNS[name].n, degeneracy(LEMMA_PATTERNS[name])[0], LEMMA_PATTERNS[name].max_degree, c, s)
    <= 1100
]


def _random_host(rng: np.random.Generator, N: int) -> np.ndarray:
    kind = rng.integers(4)
    if kind == 0:  # uniform density
        p = rng.choice([0.0, 0.01, 0.05, 0.2, 0.5, 0.9])
        up = np.triu(rng.random((N + 1, N + 1)) < p, 1)
    elif kind == 1:  # dense only inside random intervals
        cuts = np.sort(rng.choice(np.arange(2, N), size=int(rng.integers(1, 6)), replace=False))
        label = np.searchsorted(cuts, np.arange(N + 1), side="right")
        up = np.triu(label[:, None] == label[None, :], 1)
    elif kind == 2:  # edges only between far-apart vertices
        idx = np.arange(N + 1)
        up = np.triu(np.abs(idx[:, None] - idx[None, :]) > rng.integers(1, N), 1)
    else:  # random bipartite between a prefix and the rest
        split = int(rng.integers(1, N))
        idx = np.arange(N + 1)
        up = np.triu((idx[:, None] <= split) & (idx[None, :] > split) & (rng.random((N + 1, N + 1)) < 0.7), 1)
    a = up | up.T
    a[0, :] = a[:, 0] = False
    np.fill_diagonal(a, False)
    return a


def test_criterion_06_lemma_postconditions():
    with criterion(f"#6 greedy-or-sparse postconditions on {LEMMA_INSTANCES} instances") as info:
        rng = np.random.default_rng(2024)
        arms = {"red": 0, "sparse": 0}
        failures = []
        for trial in range(LEMMA_INSTANCES):
            name, c, s = LEMMA_CONFIGS[trial % len(LEMMA_CONFIGS)]
            h = LEMMA_PATTERNS[name]
            d, _ = degeneracy(h)
            need = lemma_size(0, h.n, d, h.max_degree, c, s)
            N = need + int(rng.integers(0, need // 2 + 1))
            a = _random_host(rng, N)
            w = greedy_embed_or_sparse(a, h, c, s)
            arms[w.kind] += 1
            if w.kind == "red":
                img = list(w.embedding.image)
                ok = img == sorted(set(img)) and all(a[img[x - 1], img[y - 1]] for x, y in h.edges)
            else:
                sets = [list(x) for x in w.sparse.sets]
                bound = c ** (s * d) * N / Fraction(2 ** (s * d + 1) * h.max_degree * h.n) ** s
                ok = len(sets) == 2**s and all(len(x) >= bound for x in sets)
                ok = ok and all(x == sorted(set(x)) for x in sets)
                ok = ok and all(sets[k][-1] < sets[k + 1][0] for k in range(len(sets) - 1))
                for x, y in itertools.combinations(sets, 2):
                    edges = int(a[np.ix_(x, y)].sum())
                    ok = ok and Fraction(edges, len(x) * len(y)) <= c
            if not ok:
                failures.append((trial, name, c, s, N))
        info["detail"] = f"{len(failures)} failures; arms {arms}; {len(LEMMA_CONFIGS)} (h, c, s) configurations"
        assert not failures, failures[:5]


# 7. embedders


def _check_either(c, w, red_target, blue_target) -> bool:
    if w.kind == "red":
        return w.pattern == red_target and red_pairs_ok(c, RED, red_target, w.embedding.image)
    return w.pattern == blue_target and red_pairs_ok(c, BLUE, blue_target, w.embedding.image)


def _coloring(rng, N) -> EdgeColoring:
    p_red = rng.choice([0.0, 0.001, 0.005, 0.02, 0.1, 0.5, 1.0])
    k = N * (N - 1) // 2
    return EdgeColoring.from_pairs(N, 2, (rng.random(k) >= p_red).astype(int).tolist())


def test_criterion_07_embedders():
    with criterion(f"#7 three embedders, {EMBEDDER_TRIALS} colorings each", BUDGET_7) as info:
        rng = np.random.default_rng(99)
        counts = {}
        # matching versus multipartite: 6-vertex matchings, chi = 4, parts of 2
        N1 = multipartite_size(6, 4, 2)
        target1 = complete_multipartite_trivial([2] * 4)
        kinds = {"red": 0, "blue": 0}
        for _ in range(EMBEDDER_TRIALS):
            m = random_matching(6, rng=rng)
            c = _coloring(rng, N1)
            w = match_vs_multipartite(c, m, 4, 2)
            assert _check_either(c, w, m, target1)
            kinds[w.kind] += 1
        counts["multipartite"] = dict(kinds)
        # lexicographic product K_2 . P_3 against a 4-vertex matching
        kinds = {"red": 0, "blue": 0}
        target2 = lex_product(complete(2), monotone_path(3))
        for _ in range(EMBEDDER_TRIALS):
            m = random_matching(4, rng=rng)
            ge, he = multipartite_embedder(m, 2, 1), path_embedder(m, 3)
            c = _coloring(rng, ge.size * he.size)
            w = lex_product_embed(c, m, complete(2), monotone_path(3), ge, he)
            assert _check_either(c, w, m, target2)
            kinds[w.kind] += 1
        counts["product"] = dict(kinds)
        # bandwidth: 4-vertex matchings against P_4^2
        kinds = {"red": 0, "blue": 0}
        N3 = bandwidth_size(4, 2)
        for _ in range(EMBEDDER_TRIALS):
            m = random_matching(4, rng=rng)
            c = _coloring(rng, N3)
            w = bandwidth_embed(c, m, 2)
            assert _check_either(c, w, m, path_power(4, 2))
            kinds[w.kind] += 1
        counts["bandwidth"] = dict(kinds)
        info["detail"] = f"zero failures; arms {counts}"


# 8. Erdos-Rado


def test_criterion_08_erdos_rado():
    with criterion(f"#8 Erdos-Rado step, t=3,4, {ER_COLORINGS} colorings each", BUDGET_8) as info:
        bad = 0
        for t in (3, 4):
            N = 2 ** math.comb(t, 2) + 1
            for seed in range(ER_COLORINGS):
                c = TripleColoring.random(N, 2, seed=1000 * t + seed)
                v, chi = erdos_rado_step(c, t)
                # every i < j <= t and every later sequence vertex
                ok = v == sorted(v) and len(v) == t + 1
                for i, j in itertools.combinations(range(t), 2):
                    ok = ok and all(c(v[i], v[j], v[k]) == chi(i + 1, j + 1) for k in range(j + 1, t + 1))
                bad += not ok
        info["detail"] = f"{bad} failures over {2 * ER_COLORINGS} colorings"
        assert bad == 0


# 9. off-diagonal pipeline


LLL_FAMILY = [jumbled_matching(2), OrderedGraph(4, [(1, 4), (2, 3)])]


def _assembly_targets() -> list[OrderedGraph]:
    base = jumbled_matching(2)
    return [spread_pattern(base, gap) for gap in range(1, 4) if spread_pattern(base, gap).n <= 12]


def test_criterion_09_lll_pipeline():
    with criterion(f"#9 resampling m=20, k=6, p_blue=1/4, {len(LLL_SEEDS)} seeds, then assembly N=80") as info:
        outcomes = []
        for seed in LLL_SEEDS:
            spec = BadEventFamily(20, 6, Fraction(1, 4), LLL_FAMILY, seed=seed)
            try:
                r = moser_tardos_coloring(spec, max_resamples=LLL_CAP)
            except ResampleCapExceeded as exc:
                outcomes.append(f"seed {seed}: cap {exc.resamples} hit {exc.counts}")
                continue
            assert verify_coloring(spec, r.coloring)[0]
            big = offdiagonal_assembly(r.coloring, 4)
            assert big.N == 80
            ok, why = verify_assembly(big, _assembly_targets())
            outcomes.append(f"seed {seed}: assembly {why}" if not ok else "")
        failed = [o for o in outcomes if o]
        info["detail"] = (
            f"{len(failed)} of {len(outcomes)} seeds failed; no coloring of 20 vertices avoids both a blue "
            f"triangle and a red K_6 since r(3,6) = 18; first: {failed[0] if failed else '-'}"
        )
        assert not failed


def test_criterion_09_feasible_variant_informational():
    with criterion("#9 info: m=12, k=6, p_blue=1/3, an 8-vertex matching, assembly block 4", gating=False) as info:
        fam = [random_matching(8, seed=1)]
        resamples = []
        for seed in LLL_SEEDS:
            spec = BadEventFamily(12, 6, Fraction(1, 3), fam, seed=seed)
            r = moser_tardos_coloring(spec, max_resamples=LLL_CAP)
            assert verify_coloring(spec, r.coloring)[0]
            big = offdiagonal_assembly(r.coloring, 4)
            assert verify_assembly(big, [])[0]
            resamples.append(r.resamples)
        info["detail"] = f"all seeds converge (resamples {resamples}); assemblies on 48 vertices have no blue triangle"


# 10. jumbled matchings


def test_criterion_10_jumbled():
    with criterion(f"#10 jumbled constructions and random matchings (fraction >= {MC_MIN_FRACTION})") as info:
        for t in (2, 4, 6, 8, 10):
            assert is_jumbled(jumbled_matching(t))
        rep = mc_jumbled(MC_N, MC_TRIALS, seed=MC_SEED)
        info["detail"] = (
            f"t=2..10 jumbled; n={MC_N} threshold {rep.threshold}: fraction {rep.fraction:.3f} "
            f"(95% interval [{rep.wilson_low:.3f}, {rep.wilson_high:.3f}])"
        )
        assert rep.fraction >= MC_MIN_FRACTION


# 11. discrepancy


def test_criterion_11_discrepancy():
    with criterion(f"#11 discrepancy ratio stable: max <= {DISC_FACTOR} x ratio(h=4)") as info:
        rows, c_hat = mc_discrepancy(DISC_H)
        ratio = {r.h: r.ratio for r in rows}
        info["detail"] = "ratios " + ", ".join(f"h={h}:{ratio[h]}" for h in DISC_H) + f"; C_hat = {c_hat}"
        assert max(ratio.values()) <= DISC_FACTOR * ratio[4]


# 12. S_H examples


def test_criterion_12_s_family():
    with criterion("#12 S_H worked examples") as info:
        k4 = complete_triples(4)
        assert {frozenset(g.edges) for g in s_family(k4)} == {frozenset(complete(3).edges)}
        minus = TripleSystem(4, [t for t in k4.triples if t != (2, 3, 4)])
        got = {frozenset(g.edges) for g in s_family(minus)}
        assert got == {
            frozenset({(1, 2), (1, 3), (2, 3)}),
            frozenset({(1, 2), (1, 3)}),
            frozenset({(1, 2), (2, 3)}),
        }
        info["detail"] = "K_4^(3) -> {K_3}; K_4^(3) minus a triple -> the three graphs"


# 13. tight path


def test_criterion_13_tight_path():
    with criterion("#13 stretch r_<(P^(3)_4) = 7", gating=False) as info:
        p = tight_path_3(4)
        assert not ramsey3_decide([p, p], 6).unavoidable
        assert ramsey3_decide([p, p], 7).unavoidable
        info["detail"] = "avoidable at 6, unavoidable at 7"
