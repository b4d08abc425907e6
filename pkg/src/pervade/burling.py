"""The Burling sequence ``SP_k`` built by self-composition, with its stable sets ``T_k``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .coloring import ChromaticResult, chromatic_number, clique_number, k_coloring
from .graph import Budget, BudgetExceeded, Graph, as_budget, bits, to_mask

MAX_LEVEL = 5


class NotStable(ValueError):
    pass


class LevelTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class BurlingLevel:
    g: Graph
    t_set: frozenset[int]
    k: int


def compose(a: Graph, s: Iterable[int]) -> tuple[Graph, frozenset[int]]:
    """Compose ``(A, S)`` with itself.

    Numbering: copies ``A_0..A_s`` of ``A \\ S`` in order (each keeps the
    relative order of ``V(A) \\ S``), then for ``i, j`` in lexicographic
    order the triple ``x_ij, y_ij, z_ij``.
    """
    S = sorted(set(s))
    if not a.is_stable(S):
        raise NotStable(f"{S} is not stable")
    s_mask = to_mask(S)
    rest = [v for v in a.vertices if not (s_mask >> v) & 1]
    pos = {v: i for i, v in enumerate(rest)}
    r = len(rest)
    ns = len(S)
    edges = []
    for c in range(ns + 1):
        off = c * r
        for u, v in a.edges():
            if u in pos and v in pos:
                edges.append((off + pos[u], off + pos[v]))

    def copy_of_nbrs(copy: int, j: int) -> list[int]:
        # N_{copy, j}: the copy in A_copy of N(a_j); S is stable so N(a_j) avoids S
        return [copy * r + pos[v] for v in bits(a.adj[S[j - 1]])]

    base = (ns + 1) * r
    T = []
    idx = base
    for i in range(1, ns + 1):
        for j in range(1, ns + 1):
            x, y, z = idx, idx + 1, idx + 2
            idx += 3
            for w in copy_of_nbrs(0, i):
                edges.append((x, w))
                edges.append((y, w))
            for w in copy_of_nbrs(i, j):
                edges.append((x, w))
                edges.append((z, w))
            edges.append((y, z))
            T.extend((x, y))
    return Graph(idx, edges), frozenset(T)


@lru_cache(maxsize=None)
def _level(k: int) -> BurlingLevel:
    if k == 1:
        return BurlingLevel(Graph(2, [(0, 1)]), frozenset({0}), 1)
    prev = _level(k - 1)
    g, t = compose(prev.g, prev.t_set)
    return BurlingLevel(g, t, k)


def burling(k: int) -> BurlingLevel:
    if k < 1:
        raise ValueError("level must be at least 1")
    if k > MAX_LEVEL:
        raise LevelTooLarge(f"SP_{k} is too large (cap is {MAX_LEVEL})")
    return _level(k)


def predicted_sizes(k: int) -> tuple[int, int]:
    """``(|V(SP_k)|, |T_k|)`` from the size recurrence, without building the graph."""
    n, s = 2, 1
    for _ in range(k - 1):
        n, s = (s + 1) * (n - s) + 3 * s * s, 2 * s * s
    return n, s


@dataclass(frozen=True)
class BurlingAudit:
    k: int
    n: int
    omega: int
    chi: ChromaticResult
    triangle_free: bool
    refuted_k_coloring: bool | None  # True: no k-colouring exists; None: search cut off

    @property
    def meets_lower_bound(self) -> bool:
        """chi >= k + 1 is established (either by the bracket or by refutation)."""
        return self.chi.lower >= self.k + 1 or bool(self.refuted_k_coloring)


def audit_burling(level: BurlingLevel, budget: Budget | float | None = None) -> BurlingAudit:
    bud = as_budget(budget)
    g = level.g
    omega = clique_number(g)
    chi = chromatic_number(g, bud)
    refuted: bool | None
    if chi.lower >= level.k + 1:
        refuted = True
    else:
        try:
            refuted = k_coloring(g, level.k, Budget(bud.remaining())) is None
        except BudgetExceeded:
            refuted = None
    if refuted and chi.lower < level.k + 1:
        chi = ChromaticResult(level.k + 1, max(chi.upper, level.k + 1), chi.coloring)
    return BurlingAudit(level.k, g.n, omega, chi, omega <= 2, refuted)
