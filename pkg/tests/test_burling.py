import pytest

from pervade.burling import LevelTooLarge, NotStable, audit_burling, burling, compose, predicted_sizes
from pervade.coloring import chromatic_number, clique_number, k_coloring
from pervade.graph import cycle, path

from conftest import isomorphic


def test_small_levels():
    assert burling(1).g.n == 2 and burling(1).g.m == 1
    assert isomorphic(burling(2).g, cycle(5))
    assert len(burling(2).t_set) == 2


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sizes_match_recurrence(k):
    lvl = burling(k)
    assert (lvl.g.n, len(lvl.t_set)) == predicted_sizes(k)


def test_pinned_sizes():
    assert [predicted_sizes(k) for k in range(1, 5)] == [(2, 1), (5, 2), (21, 8), (309, 128)]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_t_is_stable_and_triangle_free(k):
    lvl = burling(k)
    assert lvl.g.is_stable(sorted(lvl.t_set))
    assert clique_number(lvl.g) == min(2, lvl.g.n)


def test_deterministic():
    a, _ = compose(burling(2).g, burling(2).t_set)
    b, _ = compose(burling(2).g, burling(2).t_set)
    assert a == b == burling(3).g


def test_compose_rejects_unstable():
    with pytest.raises(NotStable):
        compose(path(3), [0, 1])


def test_level_cap():
    with pytest.raises(LevelTooLarge):
        burling(6)
    with pytest.raises(ValueError):
        burling(0)


def test_chromatic_growth():
    assert chromatic_number(burling(2).g).value == 3
    assert k_coloring(burling(3).g, 3) is None
    a = audit_burling(burling(3), 30)
    assert a.triangle_free and a.refuted_k_coloring and a.meets_lower_bound

