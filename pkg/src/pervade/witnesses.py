"""Checkers for levellings, covers, multicovers, ticks, clique-covers and
their skew/independence relations.

Each checker evaluates the defining bullets in order and returns a
:class:`~pervade.verdict.Verdict`; a rejection names the first failing
clause and a violating vertex (pair).  Sets are plain iterables of vertex
indices; witnesses never infer anything from the graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coloring import chromatic_number, cliques_containing, k_coloring
from .graph import Budget, BudgetExceeded, Graph, as_budget, bits, is_induced_path, is_path, to_mask
from .verdict import Status, Verdict


def _fs(xs: Iterable[int]) -> frozenset[int]:
    return frozenset(xs)


@dataclass(frozen=True)
class Levelling:
    levels: tuple[frozenset[int], ...]

    def __init__(self, levels: Sequence[Iterable[int]]):
        object.__setattr__(self, "levels", tuple(_fs(L) for L in levels))

    @property
    def k(self) -> int:
        return len(self.levels) - 1

    @property
    def apex(self) -> int:
        (x,) = self.levels[0]
        return x

    @property
    def base(self) -> frozenset[int]:
        return self.levels[-1]

    @property
    def union(self) -> frozenset[int]:
        return frozenset().union(*self.levels)

    def contained_in(self, other: "Levelling") -> bool:
        return self.k == other.k and all(a <= b for a, b in zip(self.levels, other.levels))


@dataclass(frozen=True)
class CliqueCover:
    X: frozenset[int]
    N: frozenset[int]
    W: frozenset[int]

    def __init__(self, X: Iterable[int], N: Iterable[int], W: Iterable[int]):
        object.__setattr__(self, "X", _fs(X))
        object.__setattr__(self, "N", _fs(N))
        object.__setattr__(self, "W", _fs(W))


def _range_check(g: Graph, *sets: Iterable[int]) -> Verdict | None:
    for s in sets:
        for v in s:
            if not 0 <= v < g.n:
                return Verdict.reject("vertex-range", f"vertex {v} not in graph", v)
    return None


def _first_edge(g: Graph, xs: Iterable[int], ys: Iterable[int]) -> tuple[int, int] | None:
    ym = to_mask(ys)
    for x in sorted(xs):
        hit = g.adj[x] & ym
        if hit:
            return x, (hit & -hit).bit_length() - 1
    return None


def _first_common(xs: Iterable[int], ys: Iterable[int]) -> int | None:
    common = set(xs) & set(ys)
    return min(common) if common else None


# levellings and covers


def check_levelling(g: Graph, lev: Levelling) -> Verdict:
    bad = _range_check(g, *lev.levels)
    if bad is not None:
        return bad
    L = lev.levels
    for i in range(len(L)):
        for j in range(i + 1, len(L)):
            x = _first_common(L[i], L[j])
            if x is not None:
                return Verdict.reject("disjoint", f"vertex {x} in levels {i} and {j}", x)
    if len(L[0]) != 1:
        return Verdict.reject("apex-singleton", f"level 0 has {len(L[0])} vertices")
    for i in range(1, len(L)):
        prev = to_mask(L[i - 1])
        for v in sorted(L[i]):
            if not g.adj[v] & prev:
                return Verdict.reject("covers", f"vertex {v} of level {i} has no neighbour in level {i - 1}", v)
    for i in range(len(L)):
        for j in range(i + 2, len(L)):
            e = _first_edge(g, L[i], L[j])
            if e:
                return Verdict.reject("anticomplete", f"edge {e[0]}-{e[1]} between levels {i} and {j}", *e)
    return Verdict.accept()


def check_kcover(g: Graph, lev: Levelling, C: Iterable[int]) -> Verdict:
    C = _fs(C)
    bad = _range_check(g, C)
    if bad is not None:
        return bad
    v = check_levelling(g, lev)
    if not v:
        return v
    if lev.k < 1:
        return Verdict.reject("k-positive", "a k-cover needs k >= 1")
    x = _first_common(lev.union, C)
    if x is not None:
        return Verdict.reject("c-disjoint", f"vertex {x} in both C and the levelling", x)
    base = to_mask(lev.base)
    for c in sorted(C):
        if not g.adj[c] & base:
            return Verdict.reject("base-covers-c", f"vertex {c} of C has no neighbour in the base", c)
    for i in range(lev.k):
        e = _first_edge(g, lev.levels[i], C)
        if e:
            return Verdict.reject("upper-anticomplete-c", f"edge {e[0]}-{e[1]} from level {i} to C", *e)
    return Verdict.accept()


def check_radius(g: Graph, lev: Levelling, z: int, path: Sequence[int]) -> Verdict:
    """``path`` runs ``z, l_k, ..., l_0`` with one vertex in each level and is induced."""
    k = lev.k
    if len(path) != k + 2 or path[0] != z:
        return Verdict.reject("radius-shape", f"expected z followed by {k + 1} level vertices")
    for t, v in enumerate(path[1:]):
        if v not in lev.levels[k - t]:
            return Verdict.reject("radius-levels", f"vertex {v} not in level {k - t}", v)
    if not is_induced_path(g, path):
        return Verdict.reject("radius-induced", "not an induced path")
    return Verdict.accept(length=k + 1)


def _indexed(family: Mapping[int, object]) -> list[int]:
    return sorted(family)


def check_multicover(g: Graph, covers: Mapping[int, Levelling], C: Iterable[int]) -> Verdict:
    C = _fs(C)
    idx = _indexed(covers)
    ks = {covers[i].k for i in idx}
    if len(ks) > 1:
        return Verdict.reject("common-k", f"levellings have different lengths {sorted(ks)}")
    for i in idx:
        v = check_kcover(g, covers[i], C)
        if not v:
            return Verdict.reject(f"cover[{i}].{v.clause}", v.detail, *v.witness)
    for a, i in enumerate(idx):
        for j in idx[a + 1 :]:
            x = _first_common(covers[i].union, covers[j].union)
            if x is not None:
                return Verdict.reject("unions-disjoint", f"vertex {x} in covers {i} and {j}", x)
    for a, i in enumerate(idx):
        for j in idx[a + 1 :]:
            uj = to_mask(covers[j].union)
            for v in sorted(covers[i].union - covers[i].base):
                hit = g.adj[v] & uj
                if hit:
                    w = (hit & -hit).bit_length() - 1
                    return Verdict.reject(
                        "base-only-contacts", f"non-base vertex {v} of cover {i} adjacent to {w} in cover {j}", v, w
                    )
    return Verdict.accept(magnitude=len(idx))


def check_independent_multicover(g: Graph, covers: Mapping[int, Levelling], C: Iterable[int]) -> Verdict:
    """A 1-multicover in which no later apex sees an earlier base."""
    v = check_multicover(g, covers, C)
    if not v:
        return v
    idx = _indexed(covers)
    if any(covers[i].k != 1 for i in idx):
        return Verdict.reject("k-is-1", "independence is defined for 1-multicovers")
    for a, i in enumerate(idx):
        for j in idx[a + 1 :]:
            e = _first_edge(g, [covers[j].apex], covers[i].base)
            if e:
                return Verdict.reject("independent", f"apex {e[0]} of cover {j} adjacent to base vertex {e[1]} of cover {i}", *e)
    return Verdict.accept(magnitude=len(idx))


def check_diameter(
    g: Graph, covers: Mapping[int, Levelling], i: int, j: int, z: int, P: Sequence[int], Q: Sequence[int]
) -> Verdict:
    """``P``, ``Q`` are radii for ``z`` in covers ``i`` and ``j``; their union is a path."""
    for name, lev, path in (("P", covers[i], P), ("Q", covers[j], Q)):
        v = check_radius(g, lev, z, path)
        if not v:
            return Verdict.reject(f"{name}.{v.clause}", v.detail, *v.witness)
    joined = list(P)[::-1] + list(Q)[1:]
    if not is_path(g, joined):
        return Verdict.reject("diameter-path", "union of the radii is not a path")
    return Verdict.accept(length=len(joined) - 1)


def check_tick(
    g: Graph, covers: Mapping[int, Levelling], C: Iterable[int], z: int, paths: Mapping[int, Sequence[int]]
) -> Verdict:
    C = _fs(C)
    v = check_multicover(g, covers, C)
    if not v:
        return Verdict.reject(f"multicover.{v.clause}", v.detail, *v.witness)
    idx = _indexed(covers)
    VM = frozenset().union(*(covers[i].union for i in idx)) if idx else frozenset()
    VMC = VM | C
    if set(paths) != set(idx):
        return Verdict.reject("path-index", "need exactly one path per cover")
    if not 0 <= z < g.n:
        return Verdict.reject("vertex-range", f"head {z} not in graph", z)
    if z in VMC:
        return Verdict.reject("head-outside", f"head {z} lies in V(M) ∪ C", z)
    e = _first_edge(g, [z], VMC)
    if e:
        return Verdict.reject("head-isolated", f"head {z} adjacent to {e[1]}", *e)
    order = 0
    for i in idx:
        S = list(paths[i])
        x = covers[i].apex
        if len(S) < 2 or S[0] != z or S[-1] != x or not is_induced_path(g, S):
            return Verdict.reject("induced-path", f"S[{i}] is not an induced path from {z} to apex {x}", i)
        meet = set(S) & VMC
        if meet != {x}:
            w = min(meet - {x})
            return Verdict.reject("path-meets", f"S[{i}] meets V(M) ∪ C at {w}", w)
        inner = [s for s in S if s != x]
        Li = covers[i].union
        for w in sorted(VMC):
            if w in Li:
                continue
            hit = g.adj[w] & to_mask(inner)
            if hit:
                s = (hit & -hit).bit_length() - 1
                return Verdict.reject("path-contacts", f"{w} outside cover {i} adjacent to {s} on S[{i}]", w, s)
        order = max(order, len(S) - 1)
    return Verdict.accept(order=order)


# clique-covers


def check_clique_cover(g: Graph, cov: CliqueCover, C: Iterable[int], xi: int) -> Verdict:
    C = _fs(C)
    bad = _range_check(g, cov.X, cov.N, cov.W, C)
    if bad is not None:
        return bad
    for (na, a), (nb, b) in itertools.combinations((("X", cov.X), ("N", cov.N), ("C", C)), 2):
        x = _first_common(a, b)
        if x is not None:
            return Verdict.reject("disjoint", f"vertex {x} in both {na} and {nb}", x)
    for name, s in (("X", cov.X), ("N", cov.N), ("C", C)):
        out = s - cov.W
        if out:
            x = min(out)
            return Verdict.reject("inside-w", f"vertex {x} of {name} not in W", x)
    if len(cov.X) != xi:
        return Verdict.reject("clique", f"|X| = {len(cov.X)}, expected {xi}")
    for a, b in itertools.combinations(sorted(cov.X), 2):
        if not g.has_edge(a, b):
            return Verdict.reject("clique", f"{a} and {b} in X are nonadjacent", a, b)
    for x in sorted(cov.X):
        for y in sorted(cov.N):
            if not g.has_edge(x, y):
                return Verdict.reject("x-complete-n", f"{x} in X nonadjacent to {y} in N", x, y)
    e = _first_edge(g, cov.X, C)
    if e:
        return Verdict.reject("x-anticomplete-c", f"edge {e[0]}-{e[1]} from X to C", *e)
    nm = to_mask(cov.N)
    for c in sorted(C):
        if not g.adj[c] & nm:
            return Verdict.reject("n-covers-c", f"vertex {c} of C has no neighbour in N", c)
    return Verdict.accept()


def check_clique_multicover(g: Graph, covers: Mapping[int, CliqueCover], C: Iterable[int], xi: int) -> Verdict:
    C = _fs(C)
    idx = _indexed(covers)
    for i in idx:
        v = check_clique_cover(g, covers[i], C, xi)
        if not v:
            return Verdict.reject(f"cover[{i}].{v.clause}", v.detail, *v.witness)
    for a, i in enumerate(idx):
        for j in idx[a + 1 :]:
            extra = covers[j].W - covers[i].W
            if extra:
                x = min(extra)
                return Verdict.reject("w-nested", f"vertex {x} in W[{j}] but not W[{i}]", x)
            x = _first_common(covers[i].X, covers[j].W)
            if x is not None:
                return Verdict.reject("x-anticomplete-w", f"X[{i}] meets W[{j}] at {x}", x)
            e = _first_edge(g, covers[i].X, covers[j].W)
            if e:
                return Verdict.reject("x-anticomplete-w", f"edge {e[0]}-{e[1]} from X[{i}] to W[{j}]", *e)
    return Verdict.accept(magnitude=len(idx))


def pair_independent(g: Graph, Li: CliqueCover, Lj: CliqueCover, C: Iterable[int]) -> int | None:
    """The least ``x_j`` in ``X_j`` witnessing independence of the pair, or None."""
    cm = to_mask(C)
    touching = [v for v in sorted(Li.N) if g.adj[v] & cm]
    for x in sorted(Lj.X):
        if not any(g.has_edge(v, x) for v in touching):
            return x
    return None


@dataclass(frozen=True)
class EarthedResult:
    status: str  # "earthed", "not_earthed" or "timeout"
    X: tuple[int, ...] = ()
    M: frozenset[int] = frozenset()

    @property
    def earthed(self) -> bool | None:
        return None if self.status == "timeout" else self.status == "earthed"


def earth_set(g: Graph, X: Iterable[int], Z: Iterable[int], W: Iterable[int]) -> frozenset[int]:
    """Vertices of ``W \\ X`` anticomplete to ``X`` with a neighbour in ``Z`` that is complete to ``X``."""
    X = _fs(X)
    xm = to_mask(X)
    zc = [z for z in Z if z not in X and g.adj[z] & xm == xm]
    zm = to_mask(zc)
    return frozenset(
        u for u in W if u not in X and not (g.adj[u] & xm) and g.adj[u] & zm
    )


def check_earthed(
    g: Graph, v: int, Z: Iterable[int], W: Iterable[int], beta: int, xi: int, budget: Budget | float | None = None
) -> EarthedResult:
    """Is ``v`` (beta, xi)-earthed via (Z, W)?  Cliques tried in lexicographic order."""
    bud = as_budget(budget)
    Z, W = _fs(Z), _fs(W)
    try:
        for X in cliques_containing(g, v, xi):
            M = earth_set(g, X, Z, W)
            if len(M) <= beta:
                continue
            if k_coloring(g, beta, bud, to_mask(M)) is None:
                return EarthedResult("earthed", X, M)
    except BudgetExceeded:
        return EarthedResult("timeout")
    return EarthedResult("not_earthed")


def skew_z(covers: Mapping[int, CliqueCover], i: int, j: int, C: Iterable[int], g: Graph) -> frozenset[int]:
    """Vertices of ``N_i`` anticomplete to ``C`` and to every ``W_k`` with ``k > j``."""
    later = set(C)
    for k in covers:
        if k > j:
            later |= covers[k].W
    lm = to_mask(later)
    return frozenset(v for v in covers[i].N if v not in later and not g.adj[v] & lm)


@dataclass(frozen=True)
class PairStatus:
    status: str  # "independent", "skew", "both", "neither" or "timeout"
    independent_via: int | None = None
    skew_clause: str | None = None  # first failing skew bullet when not skew


def pair_status(
    g: Graph,
    covers: Mapping[int, CliqueCover],
    i: int,
    j: int,
    C: Iterable[int],
    beta: int,
    xi: int,
    budget: Budget | float | None = None,
) -> PairStatus:
    if not i < j or i not in covers or j not in covers:
        raise ValueError("need i < j, both indices of the multicover")
    C = _fs(C)
    bud = as_budget(budget)
    Li, Lj = covers[i], covers[j]
    via = pair_independent(g, Li, Lj, C)
    Z = skew_z(covers, i, j, C, g)
    skew, clause = True, None
    for v in sorted(Li.N - Z):
        if not all(g.has_edge(v, x) for x in Lj.X):
            skew, clause = False, "complete-to-x"
            break
    if skew:
        for v in sorted(Lj.N):
            r = check_earthed(g, v, Z, Lj.W, beta, xi, bud)
            if r.status == "timeout":
                return PairStatus("timeout", via)
            if not r.earthed:
                skew, clause = False, "earthed"
                break
    ind = via is not None
    status = {(True, True): "both", (True, False): "independent", (False, True): "skew", (False, False): "neither"}[
        (ind, skew)
    ]
    return PairStatus(status, via, clause)


def check_residue(
    g: Graph, orig: CliqueCover, reduced: CliqueCover, C: Iterable[int], mode: str = "verbatim"
) -> Verdict:
    """``reduced`` is a C-residue of ``orig``.

    ``mode="verbatim"``: every vertex dropped from ``N`` has a neighbour in ``C``.
    ``mode="alternate"``: every dropped vertex has no neighbour in ``C``.
    """
    if mode not in ("verbatim", "alternate"):
        raise ValueError(f"unknown residue mode {mode!r}")
    if orig.X != reduced.X or orig.W != reduced.W:
        return Verdict.reject("same-x-w", "residue must keep X and W")
    if not reduced.N <= orig.N:
        x = min(reduced.N - orig.N)
        return Verdict.reject("subset", f"vertex {x} of N' not in N", x)
    cm = to_mask(C)
    for v in sorted(orig.N - reduced.N):
        has = bool(g.adj[v] & cm)
        if mode == "verbatim" and not has:
            return Verdict.reject("dropped-touch-c", f"dropped vertex {v} has no neighbour in C", v)
        if mode == "alternate" and has:
            return Verdict.reject("dropped-avoid-c", f"dropped vertex {v} has a neighbour in C", v)
    return Verdict.accept()


def check_homogeneous(
    g: Graph, V: Iterable[int], Z: Iterable[int], W: Iterable[int], beta: int, xi: int, budget: Budget | float | None = None
) -> str:
    """``"all_earthed"``, ``"none_earthed"`` (also for empty V), ``"mixed"`` or ``"timeout"``."""
    bud = as_budget(budget)
    seen = set()
    for v in sorted(set(V)):
        r = check_earthed(g, v, Z, W, beta, xi, bud)
        if r.status == "timeout":
            return "timeout"
        seen.add(r.earthed)
        if len(seen) == 2:
            return "mixed"
    return "all_earthed" if seen == {True} else "none_earthed"


# bounded search for independent clique-multicovers


@dataclass(frozen=True)
class CounterexampleResult:
    status: Status
    C: frozenset[int] = frozenset()
    covers: dict | None = None  # index -> CliqueCover


def _critical_sets(g: Graph, c: int, bud: Budget):
    """Vertex sets with chi > c all of whose one-vertex deletions have chi <= c, by size."""
    for size in range(c + 1, g.n + 1):
        for C in itertools.combinations(range(g.n), size):
            bud.check()
            cm = to_mask(C)
            if k_coloring(g, c, bud, cm) is not None:
                continue
            if all(k_coloring(g, c, bud, cm & ~(1 << v)) is not None for v in C):
                yield frozenset(C)


def find_independent_multicover_counterexample(
    g: Graph, xi: int, zeta: int, c: int, budget: Budget | float | None = None
) -> CounterexampleResult:
    """Search for ``C`` with ``chi(C) > c`` carrying an independent xi-clique-multicover of magnitude ``zeta``.

    Only vertex-critical ``C`` are tried: a witness for ``C`` restricts to
    one for any ``C' ⊆ C`` with ``chi(C') > c``.  Each ``N_i`` is taken
    maximal among vertices complete to ``X_i`` with a neighbour in ``C``, and
    each ``W_i`` minimal, which loses no generality.  Exhaustive, so meant
    for graphs of at most about 14 vertices.
    """
    bud = as_budget(budget)
    if zeta < 1 or xi < 1:
        raise ValueError("xi and zeta must be positive")
    try:
        for C in _critical_sets(g, c, bud):
            found = _multicover_for(g, C, xi, zeta, bud)
            if found is not None:
                return CounterexampleResult(Status.FOUND, C, found)
    except BudgetExceeded:
        return CounterexampleResult(Status.TIMEOUT)
    return CounterexampleResult(Status.NOT_FOUND)


def _multicover_for(g: Graph, C: frozenset[int], xi: int, zeta: int, bud: Budget) -> dict | None:
    cm = to_mask(C)
    cnb = g.nbr_mask(cm)
    cliques = []
    for v in range(g.n):
        if (cm >> v) & 1 or (cnb >> v) & 1:
            continue
        for X in cliques_containing(g, v, xi, g.full_mask & ~cm):
            if X[0] == v:
                cliques.append(X)
    pools = {}
    for X in cliques:
        xm = to_mask(X)
        pools[X] = [u for u in range(g.n) if not (xm | cm) >> u & 1 and g.adj[u] & xm == xm and g.adj[u] & cm]

    def closed(X) -> int:
        xm = to_mask(X)
        return g.nbr_mask(xm) | xm

    def extend(seq: list) -> dict | None:
        bud.check()
        if len(seq) == zeta:
            return _assemble(seq)
        for X in cliques:
            # earlier cliques anticomplete to this one
            if any(closed(Y) & to_mask(X) for Y in seq):
                continue
            seq.append(X)
            got = extend(seq)
            if got is not None:
                return got
            seq.pop()
        return None

    def _assemble(seq: list) -> dict | None:
        Ns = []
        for k, X in enumerate(seq):
            earlier = 0
            for Y in seq[:k]:
                earlier |= closed(Y)
            base = [u for u in pools[X] if not (earlier >> u) & 1]
            later = seq[k + 1 :]
            chosen = None
            for picks in itertools.product(*later):
                banned = 0
                for x in picks:
                    banned |= g.adj[x] | (1 << x)
                N = [u for u in base if not (banned >> u) & 1]
                nm = to_mask(N)
                if all(g.adj[c] & nm for c in C):
                    chosen = N
                    break
            if chosen is None:
                return None
            Ns.append(chosen)
        covers = {}
        W = set(C)
        for k in range(zeta - 1, -1, -1):
            W |= set(seq[k]) | set(Ns[k])
            covers[k + 1] = CliqueCover(seq[k], Ns[k], W)
        return dict(sorted(covers.items()))

    return extend([])
