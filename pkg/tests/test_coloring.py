import random

import networkx as nx
from hypothesis import given

from pervade.coloring import (
    ball_chromatic,
    chromatic_number,
    clique_number,
    cliques_containing,
    dsatur_coloring,
    is_proper_coloring,
    k_coloring,
    max_clique,
)
from pervade.generators import mycielski_iterate
from pervade.graph import Budget, Graph, complete, complete_bipartite, cycle, petersen

from conftest import brute_chi, brute_omega, graphs, random_graph, to_nx


def test_clique_examples():
    assert clique_number(complete(5)) == 5
    assert clique_number(cycle(5)) == 2
    assert clique_number(petersen()) == 2
    assert clique_number(Graph(0)) == 0


def test_chromatic_examples():
    assert chromatic_number(cycle(5)).value == 3
    assert chromatic_number(complete_bipartite(3, 3)).value == 2
    assert chromatic_number(mycielski_iterate(4)).value == 4
    assert chromatic_number(Graph(0)).value == 0
    assert chromatic_number(Graph(1)).value == 1


def test_ball_chromatic_examples():
    assert ball_chromatic(complete(6), 1).value == 6
    assert ball_chromatic(cycle(9), 2).value == 2
    assert ball_chromatic(Graph(0), 2).value == 0
    # diameter 2
    assert ball_chromatic(petersen(), 2).value == chromatic_number(petersen()).value


@given(graphs(max_n=8))
def test_chi_matches_exhaustive(g):
    r = chromatic_number(g)
    assert r.exact and r.value == brute_chi(g)
    assert is_proper_coloring(g, r.coloring)
    assert len(set(c for c in r.coloring if c >= 0)) == r.value


@given(graphs(max_n=9))
def test_omega_matches_exhaustive(g):
    c = max_clique(g)
    assert g.is_clique(c)
    assert len(c) == brute_omega(g)


@given(graphs(max_n=9))
def test_bound_chain(g):
    greedy = max(dsatur_coloring(g), default=-1) + 1
    chi = chromatic_number(g).value
    assert clique_number(g) <= chi <= greedy
    for rho in (1, 2):
        assert ball_chromatic(g, rho).value <= chi


def test_chi_matches_networkx_bound_on_larger_graphs():
    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng, rng.randint(10, 22), rng.uniform(0.1, 0.6))
        r = chromatic_number(g)
        assert r.exact
        greedy = max(nx.greedy_color(to_nx(g), strategy="DSATUR").values(), default=-1) + 1
        assert clique_number(g) <= r.value <= greedy
        assert k_coloring(g, r.value - 1) is None if r.value else True


def test_cliques_containing_lexicographic():
    g = complete(4)
    assert list(cliques_containing(g, 1, 3)) == [(0, 1, 2), (0, 1, 3), (1, 2, 3)]
    assert list(cliques_containing(Graph(3), 0, 2)) == []


def test_timeout_gives_bracket():
    g = mycielski_iterate(6)
    r = chromatic_number(g, Budget(0.0))
    assert r.lower <= 6 <= r.upper
