import pytest
from hypothesis import given, settings

from emso_lab.constructions import complete_graph, cycle_graph, empty_graph, path_graph
from emso_lab.game import (
    DUPLICATOR, SPOILER, GameBudgetExceeded, replay, signature, solve_ehr, solve_ehr_naive,
    verify_theorem1,
)
from emso_lab.graph import Graph, relabel
from emso_lab.logic import catalog_e12, evaluate, parse_sentence

from conftest import graphs


def test_trivial_examples():
    k1 = Graph.from_edges(1, [])
    assert solve_ehr(k1, k1).winner == DUPLICATOR
    assert solve_ehr(complete_graph(2), empty_graph(2)).winner == SPOILER
    for g in (cycle_graph(5), path_graph(4), complete_graph(3)):
        assert solve_ehr(g, g).winner == DUPLICATOR


@settings(max_examples=80)
@given(graphs(min_n=1, max_n=3), graphs(min_n=1, max_n=3))
def test_signature_solver_matches_game_tree(a, b):
    assert solve_ehr(a, b).winner == solve_ehr_naive(a, b)
    assert solve_ehr(a, b, symmetric=True).winner == solve_ehr_naive(a, b, symmetric=True)


def test_signature_solver_matches_game_tree_on_four_vertices():
    pairs = [(cycle_graph(4), path_graph(4)), (empty_graph(3), empty_graph(4)),
             (complete_graph(4), complete_graph(3)), (path_graph(3), Graph.from_edges(4, [(0, 1), (2, 3)]))]
    for a, b in pairs:
        assert solve_ehr(a, b).winner == solve_ehr_naive(a, b, budget=1 << 16)


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=5))
def test_trace_replays_to_the_winner(a, b):
    out = solve_ehr(a, b, trace=True)
    assert replay(a, b, out.trace) == out.winner
    assert out == solve_ehr(a, b, trace=True)


@given(graphs(min_n=1, max_n=5))
def test_isomorphic_copies_are_duplicator_wins(g):
    perm = list(reversed(range(g.n)))
    assert solve_ehr(g, relabel(g, perm)).winner == DUPLICATOR


@given(graphs(min_n=1, max_n=5), graphs(min_n=1, max_n=5))
def test_symmetric_variant_is_both_directions(a, b):
    both = solve_ehr(a, b).winner == DUPLICATOR and solve_ehr(b, a).winner == DUPLICATOR
    assert (solve_ehr(a, b, symmetric=True).winner == DUPLICATOR) == both


def test_game_is_not_symmetric():
    # with the set round fixed to A, three isolated vertices cannot be told from four
    e3, e4 = empty_graph(3), empty_graph(4)
    assert solve_ehr(e3, e4).winner == DUPLICATOR
    assert solve_ehr(e4, e3).winner == SPOILER


def test_asymmetric_game_misses_a_distinguishing_sentence():
    # the set round only in A lets a two-sided size test through
    f = parse_sentence("existsSet X. (exists x. exists y. X(x) & X(y) & x != y) & "
                       "(exists x. exists y. !X(x) & !X(y) & x != y)")
    e3, e4 = empty_graph(3), empty_graph(4)
    rep = verify_theorem1(e3, e4, [f])
    assert rep.winner == DUPLICATOR and rep.violation
    assert rep.differing[0][2:] == (False, True)
    assert not rep.forward_failures  # nothing true in A fails in B
    assert not verify_theorem1(e3, e4, [f], symmetric=True).violation


def test_verify_reports_differences():
    cat = [parse_sentence("existsSet X. exists x. exists y. x ~ y")]
    rep = verify_theorem1(complete_graph(2), empty_graph(2), cat)
    assert rep.winner == SPOILER and len(rep.differing) == 1 and not rep.violation
    g = cycle_graph(5)
    rep = verify_theorem1(g, g, catalog_e12(50, seed=1))
    assert rep.winner == DUPLICATOR and rep.differing == []


@given(graphs(min_n=1, max_n=4), graphs(min_n=1, max_n=4))
def test_duplicator_wins_preserve_forward_truth(a, b):
    # what the asymmetric game does guarantee: sentences true in A stay true in B
    if solve_ehr(a, b).winner == DUPLICATOR:
        for f in catalog_e12(60, seed=2):
            assert not evaluate(a, f) or evaluate(b, f)


def test_signature_of_empty_set():
    g = path_graph(3)
    assert len(signature(g, 0)) == 2  # endpoints and the middle vertex differ


def test_budget_and_size_guards():
    with pytest.raises(GameBudgetExceeded):
        solve_ehr(empty_graph(13), empty_graph(13), budget=1 << 20)
    with pytest.raises(ValueError):
        solve_ehr(empty_graph(0), empty_graph(2))
    with pytest.raises(ValueError):
        replay(complete_graph(2), complete_graph(2), ())
