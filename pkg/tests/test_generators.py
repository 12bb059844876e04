import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordramsey.core import GraphError, OrderedGraph, SizeLimitError, interval_chromatic, validate
from ordramsey.generators import (
    Permutation,
    TripleSystem,
    all_graphs,
    complete,
    complete_multipartite_trivial,
    complete_triples,
    disjoint_interval_gap_free,
    interval_discrepancy,
    is_interval_minor,
    is_jumbled,
    is_matching,
    is_perfect_matching,
    j_k,
    jumbled_matching,
    lex_product,
    monotone_path,
    path_power,
    random_matching,
    s_family,
    t_hypergraph,
    tight_path_3,
    vdc_matching,
    vdc_permutation,
)


def test_basic_families():
    assert monotone_path(3).sorted_edges == [(1, 2), (2, 3)]
    assert path_power(4, 2).sorted_edges == [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
    assert complete_multipartite_trivial([1, 1, 1]) == complete(3)
    g = complete_multipartite_trivial([2, 1, 3])
    block = [0, 0, 0, 1, 2, 2, 2]
    assert g.edges == {(i, j) for i, j in itertools.combinations(range(1, 7), 2) if block[i] != block[j]}


@given(st.integers(1, 9), st.integers(1, 9))
def test_path_power_definition(n, k):
    g = path_power(n, k)
    validate(g)
    assert g.edges == {(i, j) for i, j in itertools.combinations(range(1, n + 1), 2) if j - i <= k}


def test_lex_product_blocks():
    g = lex_product(complete(2), monotone_path(2))
    assert g.n == 4
    assert g.edges == {(1, 2), (3, 4), (1, 3), (1, 4), (2, 3), (2, 4)}


# random matchings


def test_random_matching_small_cases():
    assert random_matching(2, seed=5).sorted_edges == [(1, 2)]
    with pytest.raises(GraphError):
        random_matching(5, seed=1)
    assert random_matching(10, seed=42) == random_matching(10, seed=42)


def test_random_matching_is_uniform_on_four_vertices():
    rng = np.random.default_rng(0)
    draws = 100_000
    counts = Counter(tuple(random_matching(4, rng=rng).sorted_edges) for _ in range(draws))
    assert len(counts) == 3
    for c in counts.values():
        assert abs(c / draws - 1 / 3) < 0.02
    # chi-square with 2 degrees of freedom, 0.1% critical value 13.8
    chi2 = sum((c - draws / 3) ** 2 / (draws / 3) for c in counts.values())
    assert chi2 < 13.8


@given(st.integers(1, 20), st.integers(0, 2**32))
def test_random_matching_is_perfect(half, seed):
    m = random_matching(2 * half, seed=seed)
    validate(m)
    assert is_perfect_matching(m)


# van der Corput


def test_vdc_permutation_examples():
    assert vdc_permutation(1).image == (0, 1)
    assert vdc_permutation(2).image == (0, 2, 1, 3)
    assert vdc_permutation(3).image == (0, 4, 2, 6, 1, 5, 3, 7)


@pytest.mark.parametrize("h", range(1, 7))
def test_vdc_matching_properties(h):
    m = vdc_matching(h)
    n = 2**h
    assert is_perfect_matching(m)
    assert interval_chromatic(m) == 2
    assert all(i <= n < j for i, j in m.edges)
    if h == 1:
        assert m.sorted_edges == [(1, 3), (2, 4)]


def _discrepancy_brute(p: Permutation) -> Fraction:
    n = p.n
    best = Fraction(0)
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            img = {p(i) for i in range(a, b + 1)}
            for c in range(1, n + 1):
                for d in range(c, n + 1):
                    hit = sum(1 for y in range(c, d + 1) if y in img)
                    best = max(best, abs(hit - Fraction((b - a + 1) * (d - c + 1), n)))
    return best


def test_discrepancy_examples():
    assert interval_discrepancy(Permutation(4, (0, 1, 2, 3))) == 1
    assert interval_discrepancy(Permutation(1, (0,))) == 0
    with pytest.raises(SizeLimitError):
        interval_discrepancy(vdc_permutation(9))


@given(st.permutations(range(7)))
def test_discrepancy_matches_brute_force(perm):
    p = Permutation(7, tuple(perm))
    assert interval_discrepancy(p) == _discrepancy_brute(p)


# jumbled matchings


def test_jumbled_t2_crosses_the_blocks():
    m = jumbled_matching(2)
    assert is_perfect_matching(m)
    assert any(i <= 2 < j for i, j in m.edges)


@pytest.mark.parametrize("t", [2, 4, 6, 8, 10])
def test_jumbled_construction(t):
    m = jumbled_matching(t)
    assert m.n == t * t and is_perfect_matching(m)
    for a, b in itertools.combinations(range(t), 2):
        assert any(a * t < i <= (a + 1) * t and b * t < j <= (b + 1) * t for i, j in m.edges)
    assert is_jumbled(m)


def test_jumbled_rejects_odd_t():
    with pytest.raises(GraphError):
        jumbled_matching(3)


def test_nested_matching_is_not_jumbled():
    n = 36
    nested = OrderedGraph(2 * n, [(i, 2 * n + 1 - i) for i in range(1, n + 1)])
    assert not is_jumbled(nested)


def test_crossing_matching_is_jumbled():
    assert is_jumbled(OrderedGraph(4, [(1, 3), (2, 4)]))


def _jumbled_brute(m: OrderedGraph) -> bool:
    n = m.n
    root = 2 * math.sqrt(n)
    for a0, a1, b0, b1 in itertools.product(range(n + 1), repeat=4):
        if not (a0 < a1 <= b0 < b1):
            continue
        la, lb = a1 - a0, b1 - b0
        cnt = sum(1 for i, j in m.edges if a0 < i <= a1 and b0 < j <= b1)
        if la >= root and lb >= root and cnt == 0:
            return False
        if la <= root and lb <= root and cnt > 9:
            return False
    return True


@pytest.mark.parametrize("seed", range(6))
def test_is_jumbled_matches_brute_force(seed):
    m = random_matching(16, seed=seed)
    assert is_jumbled(m) == _jumbled_brute(m)


def test_gap_free_check_matches_brute():
    for seed in range(10):
        m = random_matching(20, seed=seed)
        for L in range(1, 11):
            ref = all(
                any(a < i <= a + L and b < j <= b + L for i, j in m.edges)
                for a in range(0, 21 - 2 * L)
                for b in range(a + L, 21 - L)
            )
            assert disjoint_interval_gap_free(m, L) == ref


# J_k and interval minors


def test_j_k_sizes():
    assert j_k(1).sorted_edges == [(1, 2)]
    assert j_k(2).edges == {(1, 3), (1, 4), (2, 3), (2, 4)}
    assert len(j_k(3).edges) == 9


def test_interval_minor_basics():
    # J_2 as a bipartite graph between [2] and [2] is a minor of J_4 on [4] x [4]
    assert is_interval_minor(j_k(2), 2, j_k(4), 4)
    assert not is_interval_minor(j_k(2), 2, OrderedGraph(8, [(1, 5)]), 4)


# triple systems


def test_tight_path():
    assert tight_path_3(3).sorted_triples == [(1, 2, 3)]
    assert tight_path_3(5).sorted_triples == [(1, 2, 3), (2, 3, 4), (3, 4, 5)]
    assert len(tight_path_3(4).triples) == 2


def test_t_hypergraph_examples():
    assert t_hypergraph(OrderedGraph(2, [(1, 2)])).sorted_triples == [(1, 2, 3)]
    assert t_hypergraph(complete(4)) == complete_triples(5)
    assert t_hypergraph(monotone_path(3)).sorted_triples == [(1, 2, 3), (1, 2, 4), (2, 3, 4)]


@given(st.integers(1, 7), st.integers(0, 2**21 - 1))
def test_t_hypergraph_count(n, mask):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    h = OrderedGraph(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
    assert len(t_hypergraph(h).triples) == sum(n + 1 - j for _, j in h.edges)


def test_s_family_worked_examples():
    k4 = complete_triples(4)
    assert s_family(k4) == [complete(3)]
    minus = TripleSystem(4, [t for t in k4.triples if t != (2, 3, 4)])
    got = {frozenset(g.edges) for g in s_family(minus)}
    assert got == {
        frozenset({(1, 2), (1, 3), (2, 3)}),
        frozenset({(1, 2), (1, 3)}),
        frozenset({(1, 2), (2, 3)}),
    }
    assert len(s_family(TripleSystem(3, []))) == 2


def test_s_family_membership_matches_oracle():
    k4 = complete_triples(4)
    hs = TripleSystem(4, [t for t in k4.triples if t != (2, 3, 4)])
    fam = {frozenset(g.edges) for g in s_family(hs)}
    for g in all_graphs(3):
        host = t_hypergraph(g).triples
        ref = any(
            all(tuple(sorted(img[v - 1] for v in t)) in host for t in hs.triples)
            for img in itertools.permutations(range(1, 5))
        )
        assert (frozenset(g.edges) in fam) == ref


@pytest.mark.parametrize("drop", [(1, 2, 3), (1, 3, 4), (2, 3, 4)])
def test_s_family_is_upward_closed(drop):
    hs = TripleSystem(4, [t for t in complete_triples(4).triples if t != drop])
    fam = {frozenset(g.edges) for g in s_family(hs)}
    for g in all_graphs(3):
        if frozenset(g.edges) in fam:
            for bigger in all_graphs(3):
                if g.edges <= bigger.edges:
                    assert frozenset(bigger.edges) in fam


def test_s_family_cap():
    with pytest.raises(SizeLimitError):
        s_family(complete_triples(8))


def test_generators_validate():
    for g in [monotone_path(6), path_power(7, 3), complete(5), j_k(3), vdc_matching(3), jumbled_matching(4)]:
        validate(g)
    assert is_matching(vdc_matching(3))
