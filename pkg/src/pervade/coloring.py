"""Exact clique number, chromatic number and ball chromatic number.

The chromatic solver is a DSATUR-ordered branch and bound: colours are
opened in increasing index order (a new colour is always the next unused
index), which removes colour-permutation symmetry.  It is seeded with a
maximum clique (lower bound, pre-coloured) and a DSATUR greedy colouring
(upper bound).  A search that runs out of budget returns the bracket it
had reached instead of failing.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Budget, BudgetExceeded, Graph, as_budget, ball, bits, popcount, to_mask

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass(frozen=True)
class ChromaticResult:
    lower: int
    upper: int
    coloring: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"chromatic number only bracketed: [{self.lower}, {self.upper}]")
        return self.lower

    def __str__(self) -> str:
        return str(self.lower) if self.exact else f"[{self.lower},{self.upper}]"


# cliques


def _color_sort(adj: Sequence[int], P: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``P``; vertices listed by colour with their colour numbers."""
    order: list[int] = []
    colors: list[int] = []
    uncolored = P
    k = 0
    while uncolored:
        k += 1
        Q = uncolored
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            uncolored ^= low
            Q &= ~adj[v] & ~low
            order.append(v)
            colors.append(k)
    return order, colors


def max_clique(g: Graph, within: int | None = None, budget: Budget | float | None = None) -> list[int]:
    """A maximum clique of ``G[within]``, sorted.

    Branch and bound with a greedy-colouring bound; raises
    :class:`BudgetExceeded` on timeout.
    """
    bud = as_budget(budget)
    adj = g.adj
    best: list[int] = []
    R: list[int] = []

    def expand(P: int) -> None:
        nonlocal best
        bud.check()
        order, colors = _color_sort(adj, P)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + colors[idx] <= len(best):
                return
            v = order[idx]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    P = g.full_mask if within is None else within
    if P:
        expand(P)
    return sorted(best)


def clique_number(g: Graph, within: int | None = None, budget: Budget | float | None = None) -> int:
    return len(max_clique(g, within, budget))


def cliques_containing(g: Graph, v: int, size: int, within: int | None = None) -> Iterable[tuple[int, ...]]:
    """All ``size``-cliques of ``G[within]`` containing ``v``, in lexicographic order of sorted tuples."""
    allowed = g.full_mask if within is None else within
    if size < 1 or not (allowed >> v) & 1:
        return
    cand = [u for u in range(g.n) if (allowed >> u) & 1 and u != v and g.has_edge(u, v)]

    def rec(start: int, chosen: list[int], common: int):
        if len(chosen) == size - 1:
            yield tuple(sorted(chosen + [v]))
            return
        for i in range(start, len(cand)):
            u = cand[i]
            if (common >> u) & 1:
                chosen.append(u)
                yield from rec(i + 1, chosen, common & g.adj[u])
                chosen.pop()

    # lexicographic order on the sorted tuple: collect then sort (counts are small)
    yield from sorted(rec(0, [], g.adj[v] & allowed))


# colouring


def dsatur_coloring(g: Graph, within: int | None = None) -> list[int]:
    """Greedy DSATUR colouring; entries outside ``within`` are -1."""
    allowed = g.full_mask if within is None else within
    verts = list(bits(allowed))
    color = [-1] * g.n
    seen = [0] * g.n  # bitmask of colours among coloured neighbours
    uncolored = allowed
    for _ in verts:
        best_v, best_key = -1, None
        for v in bits(uncolored):
            key = (popcount(seen[v]), popcount(g.adj[v] & uncolored), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        v = best_v
        c = 0
        while (seen[v] >> c) & 1:
            c += 1
        color[v] = c
        uncolored &= ~(1 << v)
        for u in bits(g.adj[v] & uncolored):
            seen[u] |= 1 << c
    return color


def is_proper_coloring(g: Graph, color: Sequence[int], within: int | None = None) -> bool:
    allowed = g.full_mask if within is None else within
    for u in bits(allowed):
        if color[u] < 0:
            return False
        for v in bits(g.adj[u] & allowed):
            if color[u] == color[v]:
                return False
    return True


class _Search:
    """DSATUR branch and bound for colourings of ``G[within]`` with fewer than ``target`` colours."""

    def __init__(self, g: Graph, within: int, budget: Budget):
        self.g = g
        self.budget = budget
        self.verts = list(bits(within))
        self.within = within
        self.color = [-1] * g.n
        # cnt[v][c]: number of coloured neighbours of v with colour c
        self.cnt = {v: [0] * (len(self.verts) + 1) for v in self.verts}
        self.sat = {v: 0 for v in self.verts}
        self.best_coloring: list[int] | None = None

    def _assign(self, v: int, c: int, uncolored: int) -> None:
        self.color[v] = c
        for u in bits(self.g.adj[v] & uncolored):
            row = self.cnt[u]
            if row[c] == 0:
                self.sat[u] += 1
            row[c] += 1

    def _unassign(self, v: int, c: int, uncolored: int) -> None:
        self.color[v] = -1
        for u in bits(self.g.adj[v] & uncolored):
            row = self.cnt[u]
            row[c] -= 1
            if row[c] == 0:
                self.sat[u] -= 1

    def run(self, target: int, lower: int, clique: Sequence[int]) -> int:
        """Find colourings with < ``target`` colours; returns the best count found (``target`` if none)."""
        self.best = target
        self.lower = lower
        uncolored = self.within
        for c, v in enumerate(clique):
            uncolored &= ~(1 << v)
            self._assign(v, c, uncolored)
        self._rec(uncolored, len(clique))
        return self.best

    def _rec(self, uncolored: int, used: int) -> None:
        if not uncolored:
            self.best = used
            self.best_coloring = list(self.color)
            return
        self.budget.check()
        g = self.g
        sat = self.sat
        v, key = -1, None
        for u in bits(uncolored):
            k = (sat[u], popcount(g.adj[u] & uncolored))
            if key is None or k > key:
                v, key = u, k
        rest = uncolored & ~(1 << v)
        row = self.cnt[v]
        for c in range(used):
            if row[c] == 0:
                self._assign(v, c, rest)
                self._rec(rest, used)
                self._unassign(v, c, rest)
                if self.best <= self.lower or used >= self.best:
                    return
        if used + 1 < self.best:
            self._assign(v, used, rest)
            self._rec(rest, used + 1)
            self._unassign(v, used, rest)


def chromatic_number(
    g: Graph, budget: Budget | float | None = None, within: int | None = None
) -> ChromaticResult:
    """Chromatic number of ``G[within]``: exact, or a ``[lower, upper]`` bracket on timeout."""
    bud = as_budget(budget)
    allowed = g.full_mask if within is None else within
    if not allowed:
        return ChromaticResult(0, 0, tuple([-1] * g.n))
    greedy = dsatur_coloring(g, allowed)
    upper = max(greedy) + 1
    try:
        clique = max_clique(g, allowed, bud)
    except BudgetExceeded:
        return ChromaticResult(1 if allowed else 0, upper, tuple(greedy))
    lower = len(clique)
    if lower == upper:
        return ChromaticResult(lower, upper, tuple(greedy))
    search = _Search(g, allowed, bud)
    try:
        search.run(upper, lower, clique)
    except BudgetExceeded:
        if search.best_coloring is not None:
            return ChromaticResult(lower, search.best, tuple(search.best_coloring))
        return ChromaticResult(lower, upper, tuple(greedy))
    if search.best_coloring is not None:
        return ChromaticResult(search.best, search.best, tuple(search.best_coloring))
    return ChromaticResult(upper, upper, tuple(greedy))


def k_coloring(
    g: Graph, k: int, budget: Budget | float | None = None, within: int | None = None
) -> list[int] | None:
    """A proper colouring of ``G[within]`` with at most ``k`` colours, or None if none exists.

    Raises :class:`BudgetExceeded` when the search is cut off, so that a
    refutation is only ever reported after complete search.
    """
    bud = as_budget(budget)
    allowed = g.full_mask if within is None else within
    if not allowed:
        return [-1] * g.n
    if k <= 0:
        return None
    greedy = dsatur_coloring(g, allowed)
    if max(greedy) + 1 <= k:
        return greedy
    clique = max_clique(g, allowed, bud)
    if len(clique) > k:
        return None
    search = _Search(g, allowed, bud)
    search.run(k + 1, len(clique), clique)
    return search.best_coloring


def chromatic_of(g: Graph, vertices: Iterable[int], budget: Budget | float | None = None) -> ChromaticResult:
    return chromatic_number(g, budget, to_mask(vertices))


def ball_chromatic(g: Graph, rho: int, budget: Budget | float | None = None) -> ChromaticResult:
    """``max_v chi(G[N^rho[v]])`` as a bracket (exact when every ball solved); 0 for the null graph."""
    if rho < 0:
        raise ValueError("radius must be non-negative")
    bud = as_budget(budget)
    lo = hi = 0
    done: dict[int, ChromaticResult] = {}
    for v in g.vertices:
        b = ball(g, v, rho)
        r = done.get(b)
        if r is None:
            r = chromatic_number(g, bud, b)
            done[b] = r
        lo = max(lo, r.lower)
        hi = max(hi, r.upper)
    return ChromaticResult(lo, hi)
