import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphanon.anonymity import is_feder_kl
from graphanon.attack import (AttackReport, attack_report, candidate_set, example6_edge_count,
                              gen_example6)
from graphanon.errors import ParameterError
from graphanon.graph import Graph

from test_graph import graphs

# Grid k <= 10, l <= k, 3 <= m <= 20 where the rotating-window construction is
# NOT Feder (k,l)-anonymous. Every case has m < k: the window for u_{m-1} does
# not wrap onto v_0, so u_0 and v_0 share only l-1 neighbors.
FEDER_FAILURES = {
    (6, 2, 5), (7, 2, 5), (7, 2, 6), (7, 3, 5), (8, 2, 5), (8, 2, 6), (8, 2, 7), (8, 3, 5),
    (8, 3, 6), (8, 4, 5), (9, 2, 5), (9, 2, 6), (9, 2, 7), (9, 2, 8), (9, 3, 5), (9, 3, 6),
    (9, 3, 7), (9, 4, 5), (9, 4, 6), (9, 5, 5), (10, 2, 5), (10, 2, 6), (10, 2, 7), (10, 2, 8),
    (10, 2, 9), (10, 3, 5), (10, 3, 6), (10, 3, 7), (10, 3, 8), (10, 4, 5), (10, 4, 6),
    (10, 4, 7), (10, 5, 5), (10, 5, 6), (10, 6, 5),
}


def brute_edges(k, l, m):
    """Count edges item by item from the construction."""
    clique = k * (k - 1) // 2
    cycle = len({frozenset((i, (i + 1) % m)) for i in range(m)})
    attach = m * len({(0 + j) % k for j in range(l)})
    return clique + cycle + attach


@pytest.mark.parametrize("k, l, m, n, edges", [(8, 3, 12, 20, 76), (2, 1, 3, 5, 7)])
def test_example6_size(k, l, m, n, edges):
    g = gen_example6(k, l, m).graph
    assert (g.n, g.num_edges) == (n, edges)
    assert edges == brute_edges(k, l, m) == example6_edge_count(k, l, m)


def test_example6_structure():
    ex = gen_example6(8, 3, 12)
    g = ex.graph
    assert all(g.has_edge(a, b) for a in ex.clique for b in ex.clique if a != b)
    for i, u in enumerate(ex.border):
        assert set(g.neighbors(u)) == {(i + j) % 8 for j in range(3)} | set(ex.cycle_neighbors(u))
        assert ex.role(u) == "border"
    assert ex.role(0) == "clique"


@pytest.mark.parametrize("k, l, m", [(1, 2, 5), (3, 0, 5), (3, 2, 2)])
def test_example6_parameter_errors(k, l, m):
    with pytest.raises(ParameterError):
        gen_example6(k, l, m)


def test_example6_is_feder_anonymous():
    assert is_feder_kl(gen_example6(8, 3, 12).graph, 8, 3).satisfied


def test_feder_grid_boundary():
    failures = set()
    for k in range(1, 11):
        for l in range(1, k + 1):
            for m in range(3, 21):
                if not is_feder_kl(gen_example6(k, l, m).graph, k, l).satisfied:
                    failures.add((k, l, m))
    assert failures == FEDER_FAILURES
    assert all(m < k for _, _, m in failures)


def test_border_unique_with_degree_grid():
    exceptions = set()
    for k in range(1, 11):
        for l in range(1, k + 1):
            for m in range(5, 21):
                ex = gen_example6(k, l, m)
                for b in ex.border:
                    c = candidate_set(ex.graph, ex.cycle_neighbors(b), ex.graph.degree(b))
                    if c != {b}:
                        exceptions.add((k, l, m))
    # k=2, l=1, m=5: clique vertex 1 touches u_1 and u_3 and has degree 3 = l + 2
    assert exceptions == {(2, 1, 5)}


def test_candidate_set_examples(c4):
    assert candidate_set(c4, {1, 3}) == {0, 2}
    assert candidate_set(c4, set()) == {0, 1, 2, 3}
    ex = gen_example6(8, 3, 12)
    for b in ex.border:
        assert candidate_set(ex.graph, ex.cycle_neighbors(b), 3 + 2) == {b}


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10), st.data())
def test_candidate_set_antitone_and_contains_target(g, data):
    small = data.draw(st.sets(st.integers(0, g.n - 1), max_size=3))
    big = small | data.draw(st.sets(st.integers(0, g.n - 1), max_size=2))
    assert candidate_set(g, big) <= candidate_set(g, small)
    v = data.draw(st.integers(0, g.n - 1))
    nb = g.neighbors(v)
    known = set(data.draw(st.lists(st.sampled_from(nb), max_size=3))) if nb else set()
    assert v in candidate_set(g, known)


def test_attack_report_example6():
    ex = gen_example6(8, 3, 12)
    rep = attack_report(ex.graph, ex.border, "neighbors_plus_degree", ex.known_neighbors())
    assert rep.uniquely_identified == 12 and rep.total_targets == 12
    assert rep.proportion == pytest.approx(0.6)
    loose = attack_report(ex.graph, ex.border, "neighbors_only", ex.known_neighbors())
    assert loose.uniquely_identified < 12


def test_attack_report_large_m():
    ex = gen_example6(8, 3, 100)
    rep = attack_report(ex.graph, ex.border, "neighbors+degree", ex.known_neighbors())
    assert rep.uniquely_identified == 100
    assert rep.proportion == pytest.approx(100 / 108)


def test_attack_report_bipartite(k33):
    rep = attack_report(k33, range(6), "neighbors_only")
    assert rep.uniquely_identified == 0
    assert rep.candidate_size_histogram == {3: 6}


def test_attack_skips_low_degree(p3):
    rep = attack_report(p3, [0, 1, 2], "neighbors")
    assert rep.skipped == [0, 2] and rep.total_targets == 1


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=10), st.sampled_from(["neighbors", "neighbors+degree"]))
def test_attack_report_invariants(g, aux):
    rep = attack_report(g, range(g.n), aux)
    assert rep.uniquely_identified == rep.candidate_size_histogram.get(1, 0)
    assert sum(rep.candidate_size_histogram.values()) == rep.total_targets
    assert rep.total_targets + len(rep.skipped) == g.n
    assert isinstance(rep, AttackReport) and rep.to_dict()["n_vertices"] == g.n


def test_unknown_aux(c4):
    with pytest.raises(ParameterError):
        attack_report(c4, [0], "everything")
