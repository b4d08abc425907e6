"""Induced containment: subgraphs, subdivisions, impressions, restriction,
and the anticomplete-paths query behind the cross property."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coloring import max_clique
from .generators import SubdivisionModel, realize_subdivision
from .graph import (
    Budget,
    BudgetExceeded,
    Graph,
    as_budget,
    bits,
    complete_bipartite,
    is_induced_path,
    is_path,
    shortest_path,
)
from .verdict import Status, Verdict


# induced subgraph isomorphism


@dataclass(frozen=True)
class InducedEmbedding:
    pattern: Graph
    host: Graph
    map: tuple[int, ...]  # pattern vertex -> host vertex


@dataclass(frozen=True)
class InducedResult:
    status: Status
    embedding: InducedEmbedding | None = None

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


def verify_embedding(pattern: Graph, host: Graph, mapping: Sequence[int]) -> bool:
    """Injective, and adjacency and non-adjacency both preserved."""
    if len(mapping) != pattern.n or len(set(mapping)) != len(mapping):
        return False
    if any(not 0 <= h < host.n for h in mapping):
        return False
    for u in pattern.vertices:
        for v in range(u + 1, pattern.n):
            if pattern.has_edge(u, v) != host.has_edge(mapping[u], mapping[v]):
                return False
    return True


def _search_order(p: Graph) -> list[int]:
    order: list[int] = []
    placed = 0
    remaining = set(p.vertices)
    while remaining:
        v = max(
            remaining,
            key=lambda x: ((p.adj[x] & placed).bit_count(), p.degree(x), -x),
        )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_induced(pattern: Graph, host: Graph, budget: Budget | float | None = None) -> InducedResult:
    """Backtracking search for an induced copy of ``pattern`` in ``host``.

    Host candidates are tried in ascending index.  ``NOT_FOUND`` only after
    an exhausted search; ``TIMEOUT`` otherwise.
    """
    bud = as_budget(budget)
    if pattern.n == 0:
        return InducedResult(Status.FOUND, InducedEmbedding(pattern, host, ()))
    if pattern.n > host.n:
        return InducedResult(Status.NOT_FOUND)
    order = _search_order(pattern)
    rank = {v: i for i, v in enumerate(order)}
    earlier_nbrs = []
    earlier_non = []
    for v in order:
        before = [u for u in order[: rank[v]]]
        earlier_nbrs.append([u for u in before if pattern.has_edge(u, v)])
        earlier_non.append([u for u in before if not pattern.has_edge(u, v)])
    host_deg = [host.degree(h) for h in host.vertices]
    deg_ok = []
    for v in order:
        d = pattern.degree(v)
        deg_ok.append(sum(1 << h for h in host.vertices if host_deg[h] >= d))
    image = [-1] * pattern.n
    hadj = host.adj

    def rec(depth: int, used: int) -> bool:
        if depth == len(order):
            return True
        bud.check()
        cand = deg_ok[depth] & ~used
        for u in earlier_nbrs[depth]:
            cand &= hadj[image[u]]
            if not cand:
                return False
        for u in earlier_non[depth]:
            cand &= ~hadj[image[u]]
        v = order[depth]
        for h in bits(cand):
            image[v] = h
            if rec(depth + 1, used | (1 << h)):
                return True
        image[v] = -1
        return False

    try:
        ok = rec(0, 0)
    except BudgetExceeded:
        return InducedResult(Status.TIMEOUT)
    if not ok:
        return InducedResult(Status.NOT_FOUND)
    return InducedResult(Status.FOUND, InducedEmbedding(pattern, host, tuple(image)))


# induced subdivisions


@dataclass(frozen=True)
class LengthConstraint:
    """Which subdivisions qualify: ``exact`` ell, ``at_least`` ell, or ``proper_at_most`` ell."""

    kind: str
    ell: int

    def __post_init__(self):
        if self.kind not in ("exact", "at_least", "proper_at_most"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.ell < 0 or (self.kind == "proper_at_most" and self.ell < 1):
            raise ValueError("ell out of range for constraint")

    @property
    def bounds(self) -> tuple[int, int | None]:
        if self.kind == "exact":
            return self.ell + 1, self.ell + 1
        if self.kind == "at_least":
            return self.ell + 1, None
        return 2, self.ell + 1

    def admits(self, model: SubdivisionModel) -> bool:
        if self.kind == "exact":
            return model.is_exact(self.ell)
        if self.kind == "at_least":
            return model.is_at_least(self.ell)
        return model.is_proper() and model.is_at_most(self.ell)


@dataclass(frozen=True)
class SubdivisionResult:
    status: Status
    model: SubdivisionModel | None = None
    embedding: InducedEmbedding | None = None
    complete: bool = False  # the cap did not cut the search short
    tried: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


def length_vectors(m: int, lo: int, hi: int | None, extra: int):
    """Length vectors of ``m`` entries in ``[lo, hi]`` whose internal vertex count
    ``sum(L - 1)`` equals ``extra``, in lexicographic order."""
    if m == 0:
        if extra == 0:
            yield ()
        return
    top = (hi if hi is not None else extra + 1)
    for first in range(lo, top + 1):
        rest = extra - (first - 1)
        if rest < (m - 1) * (lo - 1):
            break
        if hi is not None and rest > (m - 1) * (hi - 1):
            continue
        for tail in length_vectors(m - 1, lo, hi, rest):
            yield (first,) + tail


def find_induced_subdivision(
    base: Graph,
    host: Graph,
    constraint: LengthConstraint,
    cap: int,
    budget: Budget | float | None = None,
) -> SubdivisionResult:
    """Search admissible subdivisions of ``base`` in nondecreasing size up to ``cap`` vertices.

    Sound always; complete relative to the cap, and fully complete when the
    cap reaches the host size (``complete`` flag).
    """
    if cap < base.n:
        raise ValueError("cap must be at least the base vertex count")
    bud = as_budget(budget)
    lo, hi = constraint.bounds
    m = base.m
    limit = min(cap, host.n)
    tried = 0
    min_extra = m * (lo - 1)
    max_extra = limit - base.n
    if hi is not None:
        max_extra = min(max_extra, m * (hi - 1))
    for extra in range(min_extra, max_extra + 1):
        for vec in length_vectors(m, lo, hi, extra):
            if bud.expired():
                return SubdivisionResult(Status.TIMEOUT, tried=tried)
            model = SubdivisionModel(base, vec)
            realized = realize_subdivision(model).graph
            tried += 1
            res = find_induced(realized, host, bud)
            if res.status is Status.TIMEOUT:
                return SubdivisionResult(Status.TIMEOUT, tried=tried)
            if res.found:
                return SubdivisionResult(Status.FOUND, model, res.embedding, True, tried)
    # if the largest admissible size was within the cap, the cap cost nothing
    complete = cap >= host.n or (hi is not None and base.n + m * (hi - 1) <= cap)
    return SubdivisionResult(Status.NOT_FOUND_WITHIN_CAP, complete=complete, tried=tried)


# impressions


@dataclass(frozen=True)
class Impression:
    vertex_map: Mapping[int, int]
    edge_paths: Mapping[tuple[int, int], Sequence[int]]  # pattern edge (u < v) -> host path from image(u)

    @property
    def order(self) -> int:
        return max((len(p) - 1 for p in self.edge_paths.values()), default=0)


def check_impression(imp: Impression, host: Graph, pattern: Graph, strict: bool = False) -> Verdict:
    """Check the impression bullets literally; ``strict`` also demands induced paths."""
    vm = imp.vertex_map
    for v in pattern.vertices:
        if v not in vm or not 0 <= vm[v] < host.n:
            return Verdict.reject("vertex-images", f"pattern vertex {v} has no host image", v)
    for u in pattern.vertices:
        for v in range(u + 1, pattern.n):
            if vm[u] == vm[v]:
                return Verdict.reject("distinct-nonadjacent", f"{u} and {v} share image {vm[u]}", u, v)
            if host.has_edge(vm[u], vm[v]):
                return Verdict.reject("distinct-nonadjacent", f"images of {u} and {v} adjacent", u, v)
    paths = {}
    for u, v in pattern.edges():
        p = imp.edge_paths.get((u, v))
        if p is None and (v, u) in imp.edge_paths:
            p = list(imp.edge_paths[(v, u)])[::-1]
        if p is None:
            return Verdict.reject("edge-paths", f"edge {u}{v} has no path", u, v)
        p = list(p)
        if p and p[0] == vm[v] and p[-1] == vm[u]:
            p = p[::-1]
        if not is_path(host, p) or p[0] != vm[u] or p[-1] != vm[v]:
            return Verdict.reject("edge-paths", f"path for edge {u}{v} is not a host path between the images", u, v)
        if strict and not is_induced_path(host, p):
            return Verdict.reject("induced-paths", f"path for edge {u}{v} is not induced", u, v)
        paths[(u, v)] = p
    es = list(paths)
    for i, e in enumerate(es):
        for f in es[i + 1 :]:
            if set(e) & set(f):
                continue
            pe, pf = set(paths[e]), set(paths[f])
            if pe & pf:
                x = min(pe & pf)
                return Verdict.reject("anticomplete", f"paths for {e} and {f} share vertex {x}", x)
            for x in pe:
                for y in pf:
                    if host.has_edge(x, y):
                        return Verdict.reject("anticomplete", f"paths for {e} and {f} joined by edge {x}{y}", x, y)
    return Verdict.accept(order=imp.order)


# restriction


@dataclass(frozen=True)
class RestrictedResult:
    """``verdict`` is ``restricted_within_cap``, ``clique``, ``witness`` or ``timeout``."""

    verdict: str
    omega: int | None = None
    clique: tuple[int, ...] = ()
    subdivision: SubdivisionResult | None = None

    @property
    def restricted(self) -> bool | None:
        if self.verdict == "restricted_within_cap":
            return True
        if self.verdict in ("clique", "witness"):
            return False
        return None


def restricted_check(
    g: Graph, lam: int, mu: int, nu: int, cap: int | None = None, budget: Budget | float | None = None
) -> RestrictedResult:
    """``omega(g) <= nu`` and no induced proper ``(<= lam)``-subdivision of ``K_{mu,mu}`` within ``cap``."""
    if lam < 2:
        raise ValueError("lambda must be at least 2")
    bud = as_budget(budget)
    try:
        clique = max_clique(g, budget=bud)
    except BudgetExceeded:
        return RestrictedResult("timeout")
    if len(clique) > nu:
        return RestrictedResult("clique", len(clique), tuple(clique))
    base = complete_bipartite(mu, mu)
    res = find_induced_subdivision(
        base, g, LengthConstraint("proper_at_most", lam), g.n if cap is None else max(cap, base.n), bud
    )
    if res.status is Status.TIMEOUT:
        return RestrictedResult("timeout", len(clique), subdivision=res)
    if res.found:
        return RestrictedResult("witness", len(clique), subdivision=res)
    return RestrictedResult("restricted_within_cap", len(clique), subdivision=res)


# anticomplete paths


def closed_nbhd(g: Graph, mask: int) -> int:
    return g.nbr_mask(mask) | mask


def _reach(g: Graph, start: int, allowed: int) -> int:
    comp = 1 << start
    frontier = comp
    while frontier:
        frontier = g.nbr_mask(frontier) & allowed & ~comp
        comp |= frontier
    return comp


def anticomplete_paths(
    g: Graph, a: int, b: int, c: int, d: int, budget: Budget | float | None = None
) -> tuple[list[int], list[int]] | None:
    """Paths ``P`` (a to b) and ``Q`` (c to d) with ``V(P)`` anticomplete to ``V(Q)``, or None.

    Enumerates induced ``a``-``b`` paths avoiding ``N[c] ∪ N[d]`` and tests
    whether ``c`` and ``d`` stay connected outside ``N[V(P)]``; a partial
    path whose closed neighbourhood already separates ``c`` from ``d`` is
    abandoned.  Raises :class:`BudgetExceeded` on timeout.
    """
    if len({a, b, c, d}) != 4:
        raise ValueError("a, b, c, d must be distinct")
    bud = as_budget(budget)
    full = g.full_mask
    allowed = full & ~closed_nbhd(g, (1 << c) | (1 << d))
    if not ((allowed >> a) & 1 and (allowed >> b) & 1):
        return None

    def cd_connected(blocked: int) -> bool:
        return bool((_reach(g, c, full & ~blocked) >> d) & 1)

    path = [a]

    def rec(shadow: int, closed: int) -> list[int] | None:
        # shadow: closed neighbourhood of path[:-1]; closed: closed neighbourhood of path
        bud.check()
        last = path[-1]
        if last == b:
            return list(path)
        if not cd_connected(closed):
            return None
        # b must stay reachable from last avoiding the shadow of the path so far
        if not (_reach(g, last, (allowed & ~shadow) | (1 << last)) >> b) & 1:
            return None
        nxt = g.adj[last] & allowed & ~shadow
        for u in bits(nxt):
            if u in path:
                continue
            path.append(u)
            found = rec(shadow | closed_nbhd(g, 1 << last), closed | closed_nbhd(g, 1 << u))
            if found is not None:
                return found
            path.pop()
        return None

    P = rec(0, closed_nbhd(g, 1 << a))
    if P is None:
        return None
    blocked = closed_nbhd(g, sum(1 << v for v in P))
    Q = shortest_path(g, c, d, full & ~blocked)
    return P, Q


def anticomplete_paths_exist(
    g: Graph, a: int, b: int, c: int, d: int, budget: Budget | float | None = None
) -> bool | None:
    """True/False, or None when the budget ran out."""
    try:
        return anticomplete_paths(g, a, b, c, d, budget) is not None
    except BudgetExceeded:
        return None
