"""Literal, unoptimized readings of the definitions, used only as test oracles."""

from itertools import chain, combinations

import numpy as np

from graphanon.similarity import similarity_matrix


def nbrs(g, v):
    return {u for u in range(g.n) if g.adjacency[u, v]}


def subsets_up_to(items, l):
    items = list(items)
    return chain.from_iterable(combinations(items, s) for s in range(min(l, len(items)) + 1))


def def1_holds(g, k, l):
    for v in range(g.n):
        others = [x for x in range(g.n) if x != v]
        for idx in subsets_up_to(others, l):
            match = sum(1 for u in range(g.n)
                        if all(g.adjacency[u, i] == g.adjacency[v, i] for i in idx))
            if match < k:
                return False
    return True


def def2_holds(g, k, l):
    hoods = [nbrs(g, v) for v in range(g.n)]
    for v in range(g.n):
        for sub in subsets_up_to(hoods[v], l):
            if sum(1 for h in hoods if set(sub) <= h) < k:
                return False
    return True


def largest(holds, g, k, upper):
    best = 0
    for l in range(upper + 1):
        if holds(g, k, l):
            best = l
    return best


def kth_largest_per_vertex(g, kind, k):
    sim = similarity_matrix(g, kind).values
    return np.sort(sim, axis=0)[::-1][k - 1]
