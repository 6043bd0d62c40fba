"""Graph k-anonymization by clustering plus plurality rule, l-boosting by vertex deletion,
and generalized-graph summaries."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .anonymity import _check_k, _check_k_below_n, largest_l_alg2, largest_l_alg3
from .clustering import Clustering, greedy_fixed_size
from .errors import ParameterError
from .graph import Graph, remove_vertices
from .similarity import SimilarityKind, similarity_matrix


def cluster_rows(g: Graph, k: int, kind="manhattan") -> Clustering:
    """Fixed-size greedy clustering of adjacency rows under the given similarity."""
    _check_k(k)
    if k > g.n:
        raise ParameterError(f"k={k} exceeds the vertex count n={g.n}")
    return greedy_fixed_size(similarity_matrix(g, kind).values, k)


def alg1_anonymize(g: Graph, k: int, kind="manhattan",
                   clustering: Clustering | None = None) -> Graph:
    """Return a k-anonymous graph on the same vertices.

    For each unordered pair of distinct clusters the cross edges become all-or-
    nothing: all of them if strictly more than half already exist, none
    otherwise. Edges inside a cluster are always removed, so every cluster ends
    up with one shared neighbor vector.
    """
    if clustering is None:
        clustering = cluster_rows(g, k, kind)
    elif clustering.n != g.n:
        raise ParameterError("clustering does not cover the graph's vertices")
    a = g.adjacency
    out = np.zeros_like(a)
    classes = [np.array(c, dtype=np.intp) for c in clustering.classes]
    for i, ci in enumerate(classes):
        for cj in classes[i + 1:]:
            present = int(a[np.ix_(ci, cj)].sum())
            # 2 * present > |Ci||Cj| avoids the float half
            if 2 * present > len(ci) * len(cj):
                out[np.ix_(ci, cj)] = True
                out[np.ix_(cj, ci)] = True
    return Graph(g.n, out)


@dataclass
class BoostResult:
    graph: Graph
    l: int
    l_prime: int
    kept: list[int]
    deleted: list[int] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.graph.n == 0


def threshold_violators(g: Graph, k: int, threshold: int, kind) -> np.ndarray:
    sim = similarity_matrix(g, kind).values
    return np.flatnonzero((sim >= threshold).sum(axis=0) < k)


def prune_below(g: Graph, k: int, threshold: int, kind="manhattan") -> BoostResult:
    """Delete violators one at a time, lowest id first, recomputing similarities each time.

    A vertex violates when fewer than k vertices (itself included) reach
    ``threshold`` similarity with it.
    """
    kind = SimilarityKind.parse(kind)
    kept = list(range(g.n))
    deleted: list[int] = []
    current = g
    while current.n:
        bad = threshold_violators(current, k, threshold, kind)
        if not bad.size:
            break
        v = int(bad[0])
        deleted.append(kept.pop(v))
        current, _ = remove_vertices(current, [v])
    return BoostResult(current, threshold - 1, threshold, kept, deleted)


def alg4_boost(g: Graph, k: int, kind="manhattan") -> BoostResult:
    """Raise the (k,l) level by one, deleting vertices that cannot reach it.

    The result may be the empty graph; ``kept`` maps surviving ids back to ``g``.
    """
    kind = SimilarityKind.parse(kind)
    _check_k_below_n(g, k)
    l = largest_l_alg2(g, k) if kind is SimilarityKind.MANHATTAN else largest_l_alg3(g, k)
    result = prune_below(g, k, l + 1, kind)
    result.l = l
    return result


@dataclass(frozen=True)
class GeneralizedGraph:
    super_nodes: list[tuple[int, int]]
    super_edges: list[tuple[int, int, int]]

    def to_dict(self) -> dict:
        return {"super_nodes": [list(x) for x in self.super_nodes],
                "super_edges": [list(x) for x in self.super_edges]}


def generalize(g: Graph, c: Clustering) -> GeneralizedGraph:
    """Collapse each class to a super-node; super-edges carry original edge counts.

    Every pair ``i <= j`` is listed, the diagonal holding intra-class edge counts.
    """
    if c.n != g.n:
        raise ParameterError("clustering does not cover the graph's vertices")
    a = g.adjacency
    classes = [np.array(cl, dtype=np.intp) for cl in c.classes]
    nodes = [(i, len(cl)) for i, cl in enumerate(classes)]
    edges = []
    for i, ci in enumerate(classes):
        for j in range(i, len(classes)):
            count = int(a[np.ix_(ci, classes[j])].sum())
            if i == j:
                count //= 2
            edges.append((i, j, count))
    return GeneralizedGraph(nodes, edges)
