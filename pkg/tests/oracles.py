"""Slow reference implementations shared by the tests. Nothing here imports the search code."""

import itertools


def copy_brute(host_edges, N, pattern_edges, n):
    host = set(host_edges)
    for img in itertools.combinations(range(1, N + 1), n):
        if all((img[a - 1], img[b - 1]) in host for a, b in pattern_edges):
            return list(img)
    return None


def interval_chromatic_brute(n, edges):
    best = n
    for mask in range(1 << (n - 1)):
        cuts = [k + 1 for k in range(n - 1) if mask >> k & 1]
        bounds = [0] + cuts + [n]
        block = {}
        for b in range(len(bounds) - 1):
            for v in range(bounds[b] + 1, bounds[b + 1] + 1):
                block[v] = b
        if all(block[i] != block[j] for i, j in edges):
            best = min(best, len(bounds) - 1)
    return best


def degeneracy_brute(n, edges):
    adj = {v: set() for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    best = n
    for order in itertools.permutations(range(1, n + 1)):
        pos = {v: k for k, v in enumerate(order)}
        d = max((sum(pos[u] < pos[v] for u in adj[v]) for v in order), default=0)
        best = min(best, d)
    return best


def cover_brute(n, edges):
    for size in range(n + 1):
        for s in itertools.combinations(range(1, n + 1), size):
            ss = set(s)
            if all(i in ss or j in ss for i, j in edges):
                return size
    return n


def max_matching_brute(edges):
    edges = list(edges)
    best = 0
    for r in range(len(edges), 0, -1):
        for sub in itertools.combinations(edges, r):
            vs = [v for e in sub for v in e]
            if len(vs) == len(set(vs)):
                return r
    return best
