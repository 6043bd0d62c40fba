"""Exact isomorphism test for small graphs.

Degree-sequence prefilter followed by a backtracking permutation search that
only tries degree-preserving images and checks adjacency against every vertex
already placed.
"""

from __future__ import annotations

from .graph import Graph


def invariant_key(g: Graph) -> tuple:
    return (g.n, g.num_edges, tuple(sorted(g.degrees.tolist())))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if invariant_key(g) != invariant_key(h):
        return False
    n = g.n
    if n == 0:
        return True
    gd = g.degrees.tolist()
    hd = h.degrees.tolist()
    ga = g.adjacency.tolist()
    ha = h.adjacency.tolist()
    order = sorted(range(n), key=lambda v: -gd[v])
    image = [-1] * n
    used = [False] * n

    def extend(depth):
        if depth == n:
            return True
        v = order[depth]
        for w in range(n):
            if used[w] or hd[w] != gd[v]:
                continue
            if all(ga[v][x] == ha[w][image[x]] for x in order[:depth]):
                image[v] = w
                used[w] = True
                if extend(depth + 1):
                    return True
                used[w] = False
        image[v] = -1
        return False

    return extend(0)


def isomorphism_classes(graphs: list[Graph]) -> list[list[int]]:
    """Partition indices of ``graphs`` into isomorphism classes, ordered by first index."""
    buckets: dict[tuple, list[list[int]]] = {}
    classes: list[list[int]] = []
    for i, g in enumerate(graphs):
        candidates = buckets.setdefault(invariant_key(g), [])
        for cls in candidates:
            if are_isomorphic(graphs[cls[0]], g):
                cls.append(i)
                break
        else:
            cls = [i]
            candidates.append(cls)
            classes.append(cls)
    return classes
