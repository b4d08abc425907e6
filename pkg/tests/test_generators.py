import itertools

import networkx as nx
import pytest

from pervade.coloring import chromatic_number, clique_number
from pervade.generators import (
    ChandelierSpec,
    InvalidHeightFunction,
    InvalidJ,
    LampSpec,
    SubdivisionModel,
    SpotlightViolation,
    TreeOfChandeliersSpec,
    TreeOfLampsSpec,
    attach,
    chandelier,
    corpus,
    forest_of_lamps,
    lamp,
    lamp_for_chandelier,
    mycielski_iterate,
    realize_subdivision,
    subdivide_tree_of_chandeliers,
    tree_of_chandeliers,
    tree_of_lamps,
)
from pervade.graph import Graph, complete, complete_bipartite, cycle, path, star

from conftest import isomorphic


def nonisomorphic_trees(n: int) -> list[Graph]:
    if n == 1:
        return [Graph(1)]
    return [Graph(n, list(t.edges())) for t in nx.nonisomorphic_trees(n)]


@pytest.mark.parametrize(
    "base,length,expected",
    [
        (complete_bipartite(2, 2), 1, complete_bipartite(2, 2)),
        (complete_bipartite(2, 2), 2, cycle(8)),
        (complete(3), 3, cycle(9)),
    ],
)
def test_realize_examples(base, length, expected):
    assert isomorphic(realize_subdivision(SubdivisionModel.uniform(base, length)).graph, expected)


def test_realize_counts():
    base = complete(4)
    lengths = (1, 2, 3, 1, 4, 2)
    r = realize_subdivision(SubdivisionModel(base, lengths))
    assert r.graph.n == base.n + sum(L - 1 for L in lengths)
    assert r.graph.m == sum(lengths)
    for (u, v), L in zip(base.edges(), lengths):
        p = r.paths[(u, v)]
        assert len(p) == L + 1 and p[0] == u and p[-1] == v


def test_model_classes():
    m = SubdivisionModel.ell(complete(3), 2)
    assert m.is_exact(2) and m.is_at_least(1) and m.is_at_most(2) and m.is_proper()
    assert not SubdivisionModel.uniform(complete(3), 1).is_proper()


def test_chandelier_examples():
    g, p = chandelier(ChandelierSpec(tree=complete(2)))
    assert isomorphic(g, complete(3))
    g, p = chandelier(ChandelierSpec(tree=path(3)))
    assert isomorphic(g, cycle(4)) and g.neighbors(p) == [0, 2]
    g, p = chandelier(ChandelierSpec(tree=star(3)))
    assert isomorphic(g, complete_bipartite(2, 3))


def test_attach_examples():
    tri = chandelier(ChandelierSpec(tree=complete(2)))
    assert isomorphic(attach(Graph(1), 0, tri), complete(3))
    bowtie = attach(complete(3), 1, tri)
    assert bowtie.n == 5 and bowtie.m == 6 and bowtie.degree(1) == 4
    host = cycle(5)
    g = host
    for v in range(5):
        g = attach(g, v, (Graph(1), 0))
    assert g == host


def test_lamp_examples():
    g, plug = lamp(LampSpec(Graph(1), 0, (1,), {1}))
    assert isomorphic(g, complete(2)) and plug == 1
    g, plug = lamp(LampSpec(star(3), 0, (4, 1, 1, 1), {1}))
    assert isomorphic(g, complete_bipartite(2, 3))
    assert g.neighbors(plug) == [1, 2, 3]


@pytest.mark.parametrize(
    "w,bullet",
    [
        ((5, 3, 3, 1), "duplicates-only-at-1"),
        ((4, 2, 2, 2), "some-vertex-at-1"),
        ((1, 2, 2, 2), "unique-higher-neighbour"),
    ],
)
def test_lamp_height_errors(w, bullet):
    with pytest.raises(InvalidHeightFunction) as exc:
        lamp(LampSpec(star(3), 0, w, {1}))
    assert exc.value.bullet == bullet


def test_lamp_J_errors():
    with pytest.raises(InvalidJ):
        lamp(LampSpec(star(3), 0, (4, 1, 1, 1), {1, 5}))
    with pytest.raises(InvalidJ):
        lamp(LampSpec(path(3), 1, (1, 3, 1), {2}))


def test_lamp_equals_chandelier_when_internal_heights_distinct():
    # leaves at 1, internal heights distinct, J = {1}
    for n in range(3, 8):
        for t in nonisomorphic_trees(n):
            spec = lamp_for_chandelier(ChandelierSpec(tree=t))
            g, _ = lamp(spec)
            assert isomorphic(g, chandelier(ChandelierSpec(tree=t))[0])


def test_extra_apex_vertices():
    # path a-b-c-d rooted at b: heights give a second apex x_2 seeing the height-1 side
    t = path(4)
    spec = LampSpec(t, 1, (1, 4, 3, 1), {1, 2})
    g, plug = lamp(spec)
    assert g.n == 6
    x1, x2 = 4, 5
    assert plug == x1
    assert g.neighbors(x1) == [0, 3]
    assert g.neighbors(x2) == [0, 3]


def test_tree_of_lamps():
    assert tree_of_lamps(TreeOfLampsSpec.spotlight())[0] == Graph(1)
    k2 = LampSpec(Graph(1), 0, (1,), {1})
    base, _ = lamp(k2)
    g, plug = tree_of_lamps(TreeOfLampsSpec(k2, ((0, TreeOfLampsSpec.spotlight()),)))
    assert g == base and plug == 1
    # a K2-lamp child on the non-plug vertex of a K2 lamp sits next to the plug
    with pytest.raises(SpotlightViolation):
        tree_of_lamps(TreeOfLampsSpec(k2, ((0, TreeOfLampsSpec(k2)),)))
    # C4 lamp: path a-b-c rooted at b; b is not adjacent to the plug
    c4 = LampSpec(path(3), 1, (1, 2, 1), {1})
    g, plug = tree_of_lamps(TreeOfLampsSpec(c4, ((1, TreeOfLampsSpec(k2)),)))
    assert g.n == 5 and g.degree(1) == 3 and plug == 3
    forest = forest_of_lamps([TreeOfLampsSpec(k2), TreeOfLampsSpec(c4)])
    assert forest.n == 6 and forest.m == 5


def test_subdivided_tree_of_chandeliers_rebuilds():
    tri = ChandelierSpec(tree=complete(2))
    c4 = ChandelierSpec(tree=path(3))
    k2 = ChandelierSpec(degenerate="K2", pivot=0)
    spec = TreeOfChandeliersSpec((c4, tri, k2), (None, 0, 2))
    g, _ = tree_of_chandeliers(spec)
    edges = g.edges()
    for lengths in ({e: 2 for e in edges}, {edges[0]: 3, edges[-1]: 2}, {e: 1 + (i % 3) for i, e in enumerate(edges)}):
        from pervade.generators import SubdivisionModel, realize_subdivision

        expect = realize_subdivision(SubdivisionModel(g, tuple(lengths.get(e, 1) for e in edges))).graph
        rebuilt, _ = tree_of_chandeliers(subdivide_tree_of_chandeliers(spec, lengths))
        assert isomorphic(rebuilt, expect)


def test_corpus():
    assert isomorphic(mycielski_iterate(3), cycle(5))
    grotzsch = mycielski_iterate(4)
    assert grotzsch.n == 11 and clique_number(grotzsch) == 2 and chromatic_number(grotzsch).value == 4
    assert corpus("cycle", 8) == cycle(8)
    assert corpus("random_gnp", 10, 0.5, 3) == corpus("random_gnp", 10, 0.5, 3)
    for k in range(2, 7):
        assert clique_number(mycielski_iterate(k)) == min(k, 2)
