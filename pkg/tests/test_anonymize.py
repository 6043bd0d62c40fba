import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphanon.anonymity import is_k_anonymous, largest_l_alg2, largest_l_alg3
from graphanon.anonymize import (alg1_anonymize, alg4_boost, cluster_rows, generalize,
                                 prune_below)
from graphanon.clustering import Clustering, greedy_fixed_size
from graphanon.errors import ParameterError
from graphanon.graph import Graph, cycle_graph, disjoint_union, neighbor_partition
from graphanon.similarity import sim_2path, sim_l1

from test_graph import graphs


def test_cluster_rows_examples(c4, k4):
    assert cluster_rows(c4, 2, "manhattan").as_lists() == [[0, 2], [1, 3]]
    assert cluster_rows(k4, 4).as_lists() == [[0, 1, 2, 3]]
    assert cluster_rows(k4, 1).as_lists() == [[0], [1], [2], [3]]
    with pytest.raises(ParameterError):
        cluster_rows(k4, 5)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=14), st.integers(1, 5), st.sampled_from(["l1", "2path"]))
def test_cluster_sizes(g, k, kind):
    if k > g.n:
        return
    c = cluster_rows(g, k, kind)
    sizes = [len(cl) for cl in c.classes]
    assert len(sizes) == g.n // k
    assert all(s == k for s in sizes[:-1]) and k <= sizes[-1] <= 2 * k - 1
    assert c == cluster_rows(g, k, kind)


def test_clustering_validation():
    with pytest.raises(ParameterError):
        Clustering(((0, 1), (2,)), 2)
    with pytest.raises(ParameterError):
        Clustering(((0, 1), (1, 2)), 1)


def test_greedy_seed_is_least_similar():
    sim = [[9, 5, 5, 0], [5, 9, 5, 1], [5, 5, 9, 1], [0, 1, 1, 9]]
    # vertex 3 has the smallest total similarity (2) and seeds the first class;
    # 1 and 2 tie as its nearest, the lower id wins
    assert greedy_fixed_size(sim, 2).as_lists() == [[1, 3], [0, 2]]


def plurality_oracle(g, classes):
    """Direct loop over cluster pairs and vertex pairs."""
    out = set()
    for i, ci in enumerate(classes):
        for cj in classes[i + 1:]:
            present = sum(1 for u in ci for v in cj if g.has_edge(u, v))
            if present > len(ci) * len(cj) / 2:
                out |= {(min(u, v), max(u, v)) for u in ci for v in cj}
    return Graph.from_edges(g.n, out)


def test_alg1_examples(c4, p3, k4):
    assert alg1_anonymize(c4, 2, "l1") == c4
    assert alg1_anonymize(p3, 3) == Graph.empty(3)
    out = alg1_anonymize(k4, 2, clustering=Clustering.of([[0, 1], [2, 3]]))
    assert out.edges == [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert alg1_anonymize(k4, 2) == out


def test_alg1_tie_deletes():
    # clusters {0,1} and {2,3} with exactly 2 of 4 cross edges
    g = Graph.from_edges(4, [(0, 2), (1, 3)])
    assert alg1_anonymize(g, 2, clustering=Clustering.of([[0, 1], [2, 3]])) == Graph.empty(4)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=16), st.integers(1, 5), st.sampled_from(["l1", "2path"]))
def test_alg1_properties(g, k, kind):
    if k > g.n:
        return
    c = cluster_rows(g, k, kind)
    out = alg1_anonymize(g, k, kind, c)
    assert out == plurality_oracle(g, c.as_lists())
    assert is_k_anonymous(out, k).satisfied
    label = {v: i for i, cl in enumerate(neighbor_partition(out)) for v in cl}
    for cl in c.classes:
        assert len({label[v] for v in cl}) == 1
    assert alg1_anonymize(out, k, kind, c) == out


def naive_boost(g, k, threshold, sim):
    """Set-based deletion loop; returns the surviving original ids."""
    alive = list(range(g.n))
    adj = {v: set(g.neighbors(v)) for v in alive}
    while alive:
        n = len(alive)

        def s(u, v):
            if sim == "l1":
                return n - len((adj[u] ^ adj[v]))
            return len(adj[u] & adj[v])

        bad = [v for v in alive if sum(1 for u in alive if s(u, v) >= threshold) < k]
        if not bad:
            break
        v = bad[0]
        alive.remove(v)
        for u in adj.pop(v):
            adj[u].discard(v)
    return alive


def test_boost_k33_empties(k33):
    res = alg4_boost(k33, 3, "2path")
    assert (res.l, res.l_prime) == (3, 4)
    assert res.is_empty and res.deleted == list(range(6))


def test_boost_two_squares():
    g = disjoint_union(cycle_graph(4), cycle_graph(4))
    res = alg4_boost(g, 4, "l1")
    assert res.l == largest_l_alg2(g, 4) == 4
    assert res.kept == naive_boost(g, 4, 5, "l1") == []
    assert res.is_empty


def test_prune_unchanged_when_satisfied(c4):
    res = prune_below(c4, 2, 4, "l1")
    assert res.graph == c4 and res.deleted == [] and res.kept == [0, 1, 2, 3]


def test_boost_precondition(c4):
    with pytest.raises(ParameterError):
        alg4_boost(c4, 4)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=12), st.integers(1, 4), st.sampled_from(["l1", "2path"]))
def test_boost_matches_naive_and_fixpoint(g, k, kind):
    if k >= g.n:
        return
    res = alg4_boost(g, k, kind)
    l = largest_l_alg2(g, k) if kind == "l1" else largest_l_alg3(g, k)
    assert res.l == l and res.l_prime == l + 1
    assert res.kept == naive_boost(g, k, l + 1, kind)
    h = res.graph
    sim = sim_l1 if kind == "l1" else sim_2path
    for v in range(h.n):
        assert sum(1 for u in range(h.n) if sim(h, u, v) >= res.l_prime) >= k
    for u, v in h.edges:
        assert g.has_edge(res.kept[u], res.kept[v])


def test_generalize_examples(c4, k4):
    gg = generalize(c4, Clustering.of([[0, 2], [1, 3]]))
    assert gg.super_nodes == [(0, 2), (1, 2)]
    assert gg.super_edges == [(0, 0, 0), (0, 1, 4), (1, 1, 0)]
    gg = generalize(k4, Clustering.of([[0, 1], [2, 3]]))
    assert gg.super_edges == [(0, 0, 1), (0, 1, 4), (1, 1, 1)]
    gg = generalize(Graph.empty(5), Clustering.of([[0, 1, 2], [3, 4]]))
    assert all(c == 0 for *_, c in gg.super_edges)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=14), st.integers(1, 4))
def test_generalize_lossless(g, k):
    if k > g.n:
        return
    gg = generalize(g, cluster_rows(g, k))
    assert sum(c for *_, c in gg.super_edges) == g.num_edges
