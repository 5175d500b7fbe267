from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from emso_lab.cliques import (
    ClassLabel, Family, PartitionError, class_patterns, classify, count_X1, count_X2,
    decide_phi_C, decide_phi_C_from_cliques, decide_phi_I, dominates, is_clique,
    is_maximal_clique, maximal_cliques,
)
from emso_lab.constructions import complete_graph, cycle_graph, empty_graph
from emso_lab.graph import Graph, complement, sample_gnp
from emso_lab.logic import builtin, evaluate

from conftest import all_graphs, graphs


# ---- independent oracle: the definitions over all vertex subsets

def _subsets(n):
    return range(1 << n)


def _clique(g, x):
    vs = [v for v in range(g.n) if x >> v & 1]
    return all(g.has_edge(u, v) for u, v in combinations(vs, 2))


def _phiC(g, x):
    """Some vertex outside x is adjacent to nothing in x."""
    return any(not x >> v & 1 and not g.adj[v] & x for v in range(g.n))


def _maxcl(g, x):
    return _clique(g, x) and not any(not x >> v & 1 and g.adj[v] & x == x for v in range(g.n))


def oracle(g, j):
    xs = _subsets(g.n)
    if j == 1:
        return all(_phiC(g, x) for x in xs if _clique(g, x))
    if j == 2:
        return all(not _phiC(g, x) for x in xs if _maxcl(g, x))
    return all(_maxcl(g, x) for x in xs if _clique(g, x) and not _phiC(g, x))


# ---- maximal cliques

def test_maximal_cliques_small_examples():
    assert maximal_cliques(cycle_graph(5)) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert maximal_cliques(complete_graph(4)) == [(0, 1, 2, 3)]
    assert maximal_cliques(empty_graph(0)) == [()]
    assert maximal_cliques(empty_graph(2)) == [(0,), (1,)]


def test_maximal_cliques_match_subset_enumeration():
    g = sample_gnp(10, 0.5, seed=1)
    brute = sorted(tuple(v for v in range(10) if x >> v & 1) for x in range(1, 1 << 10) if _maxcl(g, x))
    assert maximal_cliques(g) == brute


@given(graphs(min_n=1, max_n=12))
def test_maximal_cliques_match_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assert maximal_cliques(g) == sorted(tuple(sorted(c)) for c in nx.find_cliques(h))


@given(graphs(min_n=1, max_n=10))
def test_clique_list_invariants(g):
    cl = maximal_cliques(g)
    sets = [set(c) for c in cl]
    assert all(is_clique(g, c) and is_maximal_clique(g, c) for c in cl)
    assert not any(a < b for a in sets for b in sets)
    assert set().union(*sets) == set(range(g.n))


def test_dominates_examples():
    assert dominates(complete_graph(3), {0})
    assert not dominates(cycle_graph(4), set())
    assert dominates(cycle_graph(5), {0, 2})
    assert dominates(empty_graph(0), set())


# ---- the six sentences

def test_spec_examples_for_deciders():
    k3, e3 = complete_graph(3), empty_graph(3)
    assert decide_phi_C(k3, 1) is False
    assert decide_phi_C(k3, 3) is False
    assert decide_phi_C(e3, 1) is True
    assert decide_phi_I(e3, 1) is False
    assert decide_phi_I(k3, 1) is True


@pytest.mark.parametrize("n", range(0, 6))
def test_deciders_match_oracle_on_all_small_graphs(n):
    for g in all_graphs(n):
        cl = maximal_cliques(g)
        for j in (1, 2, 3):
            want = oracle(g, j)
            assert decide_phi_C(g, j) == want, (g.edges(), j)
            assert decide_phi_C_from_cliques(g, cl, j) == want, (g.edges(), j)


@given(graphs(max_n=8))
def test_deciders_match_mso_evaluation(g):
    for j in (1, 2, 3):
        assert decide_phi_C(g, j) == evaluate(g, builtin(f"phiC{j}"))
        assert decide_phi_I(g, j) == evaluate(g, builtin(f"phiI{j}"))


@given(graphs(max_n=14))
def test_search_and_list_routes_agree(g):
    cl = maximal_cliques(g)
    for j in (1, 2, 3):
        assert decide_phi_C(g, j) == decide_phi_C_from_cliques(g, cl, j)


@given(graphs(max_n=12))
def test_independent_family_is_the_complement_dual(g):
    for j in (1, 2, 3):
        assert decide_phi_I(g, j) == decide_phi_C(complement(g), j)


def test_decider_rejects_bad_index():
    with pytest.raises(ValueError):
        decide_phi_C(complete_graph(2), 4)


# ---- partition

def test_class_patterns_cover_every_truth_assignment():
    for code in range(8):
        p1, p2, p3 = (bool(code >> i & 1) for i in range(3))
        hits = class_patterns(p1, p2, p3)
        # only phi1 & phi2, which no graph with a vertex satisfies, hits two classes
        assert len(hits) == (2 if p1 and p2 else 1)


def test_k3_is_class_five():
    assert classify(complete_graph(3)) == ClassLabel(Family.CLIQUE, 5)


def test_tiny_graphs_land_in_class_four():
    assert classify(empty_graph(0)).index == 4
    assert classify(empty_graph(1)).index == 4


@given(graphs(min_n=2, max_n=12))
def test_implications_and_unique_label(g):
    for fam in Family:
        h = g if fam is Family.CLIQUE else complement(g)
        p1, p2, p3 = (decide_phi_C(h, j) for j in (1, 2, 3))
        assert not p1 or p3
        assert not p2 or not p1
        assert classify(g, fam).family is fam


def test_partition_error_is_raised_for_inconsistent_patterns(monkeypatch):
    import emso_lab.cliques as mod
    monkeypatch.setattr(mod, "decide_phi_C", lambda g, j: True)
    with pytest.raises(PartitionError):
        mod.classify(complete_graph(2))


def test_label_string_forms():
    assert str(ClassLabel(Family.CLIQUE, 2)) == "G2"
    assert str(ClassLabel(Family.INDEPENDENT, 2)) == "G2-ind"


# ---- X1 / X2 counts

def _x1_brute(g, k):
    total = 0
    for c in combinations(range(g.n), k):
        m = sum(1 << v for v in c)
        if _maxcl(g, m):
            total += sum(1 for v in range(g.n) if not m >> v & 1 and not g.adj[v] & m)
    return total


def _x2_brute(g, k):
    total = 0
    for c in combinations(range(g.n), k):
        m = sum(1 << v for v in c)
        if _clique(g, m) and not _phiC(g, m):
            total += sum(1 for v in range(g.n) if not m >> v & 1 and g.adj[v] & m == m)
    return total


def test_count_examples():
    assert count_X1(Graph.from_edges(3, [(0, 1)]), 2) == 1
    assert count_X2(complete_graph(3), 2) == 3
    mean = sum(Fraction(count_X1(g, 2), 8) for g in all_graphs(3))
    assert mean == Fraction(3, 8)


@given(graphs(min_n=1, max_n=8))
def test_counts_match_brute_force(g):
    for k in range(1, g.n + 1):
        assert count_X1(g, k) == _x1_brute(g, k)
        assert count_X2(g, k) == _x2_brute(g, k)


def test_count_rejects_k_zero():
    with pytest.raises(ValueError):
        count_X1(complete_graph(3), 0)
    with pytest.raises(ValueError):
        count_X2(complete_graph(3), 0)
