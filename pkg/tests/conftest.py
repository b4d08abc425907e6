"""Shared oracles and strategies.  Oracles are deliberately naive and share no code with the package."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import settings, strategies as st

from pervade.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def isomorphic(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(to_nx(a), to_nx(b))


def adjacent(g: Graph, u: int, v: int) -> bool:
    return v in set(g.neighbors(u))


def brute_chi(g: Graph) -> int:
    if g.n == 0:
        return 0
    edges = g.edges()
    for k in range(1, g.n + 1):
        for col in itertools.product(range(k), repeat=g.n):
            if all(col[u] != col[v] for u, v in edges):
                return k
    return g.n


def brute_omega(g: Graph) -> int:
    best = 0
    for r in range(1, g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            if all(adjacent(g, u, v) for u, v in itertools.combinations(s, 2)):
                best = r
                break
        else:
            break
    return best


def brute_induced(p: Graph, h: Graph) -> bool:
    for img in itertools.permutations(range(h.n), p.n):
        if all(adjacent(p, u, v) == adjacent(h, img[u], img[v]) for u, v in itertools.combinations(range(p.n), 2)):
            return True
    return False


def _connected(g: Graph, s: set[int]) -> bool:
    if not s:
        return False
    start = next(iter(s))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in s and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == s


def _same_component(g: Graph, allowed: set[int], a: int, b: int) -> bool:
    if a not in allowed or b not in allowed:
        return False
    seen, stack = {a}, [a]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in allowed and y not in seen:
                seen.add(y)
                stack.append(y)
    return b in seen


def brute_anticomplete(g: Graph, a: int, b: int, c: int, d: int) -> bool:
    """Some connected S containing a, b leaves c, d connected outside N[S]."""
    others = [v for v in range(g.n) if v not in (a, b)]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            S = {a, b, *extra}
            if not _connected(g, S):
                continue
            closed = set(S)
            for v in S:
                closed.update(g.neighbors(v))
            rest = set(range(g.n)) - closed
            if _same_component(g, rest, c, d):
                return True
    return False


def _rational_meet(p1, p2, q1, q2) -> bool:
    """Slow oracle: solve p1 + s(p2-p1) = q1 + t(q2-q1) over the rationals."""
    F = Fraction
    ax, ay = F(p2[0] - p1[0]), F(p2[1] - p1[1])
    bx, by = F(q2[0] - q1[0]), F(q2[1] - q1[1])
    cx, cy = F(q1[0] - p1[0]), F(q1[1] - p1[1])
    det = ax * (-by) - (-bx) * ay
    if det != 0:
        s = (cx * (-by) - (-bx) * cy) / det
        t = (ax * cy - ay * cx) / det
        return 0 <= s <= 1 and 0 <= t <= 1
    if ax * cy - ay * cx != 0:
        return False  # parallel, not collinear
    # collinear: project everything on the longer axis of p
    k = 0 if abs(ax) >= abs(ay) else 1
    lo_p, hi_p = sorted((p1[k], p2[k]))
    lo_q, hi_q = sorted((q1[k], q2[k]))
    return max(lo_p, lo_q) <= min(hi_p, hi_q)


def oracle_graph(curves) -> Graph:
    edges = []
    for i, j in itertools.combinations(range(len(curves)), 2):
        if any(_rational_meet(a, b, c, d) for a, b in curves[i].segments for c, d in curves[j].segments):
            edges.append((i, j))
    return Graph(len(curves), edges)


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_connected(rng: random.Random, n: int, extra: float = 0.15) -> Graph:
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.add((u, v))
    return Graph(n, sorted(edges))


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture
def rng():
    return random.Random(12345)


# acceptance criteria report: one line per criterion after the run

ACCEPTANCE: dict[int, str] = {}


def record_criterion(num: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[num] = f"criterion {num:>2}: {'PASS' if passed else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
