"""Slow, obviously-correct reference implementations over plain edge lists.

None of these touch the bitset kernels in ifam; they see a graph only through
Graph.edges().
"""

from __future__ import annotations

import itertools


def pairs(n):
    return [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]


def edge_set(g):
    return {frozenset(e) for e in g.edges()}


def connected(g) -> bool:
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in g.edges():
        parent[find(u)] = find(v)
    return len({find(v) for v in range(1, g.n + 1)}) == 1


def contains(g, pattern) -> bool:
    pv = sorted({v for e in pattern.edges() for v in e})
    pe = pattern.edges()
    ge = edge_set(g)
    for image in itertools.permutations(range(1, g.n + 1), len(pv)):
        f = dict(zip(pv, image))
        if all(frozenset((f[u], f[v])) in ge for u, v in pe):
            return True
    return not pe


def colorable(g, r) -> bool:
    es = g.edges()
    for coloring in itertools.product(range(r), repeat=g.n):
        if all(coloring[u - 1] != coloring[v - 1] for u, v in es):
            return True
    return False


def hamiltonian(g) -> bool:
    if g.n < 3:
        return False
    ge = edge_set(g)
    for perm in itertools.permutations(range(2, g.n + 1)):
        cyc = (1,) + perm
        if all(frozenset((cyc[i], cyc[(i + 1) % g.n])) in ge for i in range(g.n)):
            return True
    return False


def perfect_matching(g) -> bool:
    if g.n % 2:
        return False
    es = g.edges()
    for combo in itertools.combinations(es, g.n // 2):
        if len({v for e in combo for v in e}) == g.n:
            return True
    return False


def no_isolated(g) -> bool:
    return {v for e in g.edges() for v in e} == set(range(1, g.n + 1))


def induced_edges(g, vs):
    """Edges of g among vs, relabeled to 1..len(vs) in the given order."""
    idx = {v: i + 1 for i, v in enumerate(vs)}
    return [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx]
