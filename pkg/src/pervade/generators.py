"""Constructors for the graph families: subdivisions, chandeliers, lamps,
trees of lamps and a small corpus of triangle-free test graphs.

Every constructor takes an explicit spec value and numbers the output
canonically (input tree vertices first, added vertices after in a fixed
order), so the same spec always realizes to the same adjacency.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .graph import Graph, GraphError, bits, complete, complete_bipartite, component_masks, cycle


class SpecError(ValueError):
    pass


class InvalidTree(SpecError):
    pass


class InvalidHeightFunction(SpecError):
    def __init__(self, bullet: str, detail: str):
        super().__init__(f"{bullet}: {detail}")
        self.bullet = bullet


class InvalidJ(SpecError):
    pass


class SpotlightViolation(SpecError):
    pass


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and len(component_masks(g)) == 1


# subdivisions


@dataclass(frozen=True)
class SubdivisionModel:
    """A base graph with a path length (number of edges) for each base edge.

    ``lengths`` is aligned with ``base.edges()``.
    """

    base: Graph
    lengths: tuple[int, ...]

    def __post_init__(self):
        if len(self.lengths) != self.base.m:
            raise SpecError(f"expected {self.base.m} lengths, got {len(self.lengths)}")
        if any(L < 1 for L in self.lengths):
            raise SpecError("every path needs at least one edge")

    @classmethod
    def uniform(cls, base: Graph, length: int) -> "SubdivisionModel":
        return cls(base, (length,) * base.m)

    @classmethod
    def ell(cls, base: Graph, ell: int) -> "SubdivisionModel":
        """The ``ell``-subdivision: every edge becomes a path with ``ell + 1`` edges."""
        return cls.uniform(base, ell + 1)

    def length_of(self, u: int, v: int) -> int:
        e = (min(u, v), max(u, v))
        return self.lengths[self.base.edges().index(e)]

    @property
    def size(self) -> int:
        return self.base.n + sum(L - 1 for L in self.lengths)

    def is_exact(self, ell: int) -> bool:
        return all(L == ell + 1 for L in self.lengths)

    def is_at_least(self, ell: int) -> bool:
        return all(L >= ell + 1 for L in self.lengths)

    def is_at_most(self, ell: int) -> bool:
        return all(L <= ell + 1 for L in self.lengths)

    def is_proper(self) -> bool:
        return all(L >= 2 for L in self.lengths)


@dataclass(frozen=True)
class Realized:
    graph: Graph
    branch: tuple[int, ...]  # base vertex -> realized vertex
    paths: dict  # base edge (u, v), u < v -> realized vertex list from u to v


def realize_subdivision(model: SubdivisionModel) -> Realized:
    base = model.base
    n = base.n
    edges = []
    paths = {}
    nxt = n
    for (u, v), L in zip(base.edges(), model.lengths):
        inner = list(range(nxt, nxt + L - 1))
        nxt += L - 1
        seq = [u] + inner + [v]
        edges.extend(zip(seq, seq[1:]))
        paths[(u, v)] = seq
    return Realized(Graph(nxt, edges), tuple(range(n)), paths)


def kmm_subdivision(m: int, r: int) -> Graph:
    """``K^r_{m,m}``: the ``r``-subdivision of ``K_{m,m}``."""
    return realize_subdivision(SubdivisionModel.ell(complete_bipartite(m, m), r)).graph


# chandeliers


@dataclass(frozen=True)
class ChandelierSpec:
    """A tree whose leaves get joined to a new pivot.

    ``degenerate`` is ``"K1"`` or ``"K2"`` for the one- and two-vertex
    complete graphs, whose chosen pivot is ``pivot``; ``tree`` is then ignored.
    """

    tree: Graph | None = None
    degenerate: str | None = None
    pivot: int = 0

    def __post_init__(self):
        if self.degenerate is None:
            if self.tree is None or not is_tree(self.tree) or self.tree.n < 2:
                raise InvalidTree("chandelier needs a tree with at least 2 vertices")
        elif self.degenerate not in ("K1", "K2"):
            raise SpecError(f"unknown degenerate chandelier {self.degenerate!r}")
        elif self.pivot not in range(1 if self.degenerate == "K1" else 2):
            raise SpecError("pivot out of range")


def chandelier(spec: ChandelierSpec) -> tuple[Graph, int]:
    if spec.degenerate == "K1":
        return Graph(1), 0
    if spec.degenerate == "K2":
        return complete(2), spec.pivot
    t = spec.tree
    leaves = [v for v in t.vertices if t.degree(v) == 1]
    pivot = t.n
    return Graph(t.n + 1, t.edges() + [(pivot, v) for v in leaves]), pivot


def attach(host: Graph, at: int, piece: tuple[Graph, int]) -> Graph:
    """Disjoint union of ``host`` and ``piece`` with the piece's pivot identified onto ``at``."""
    if not 0 <= at < host.n:
        raise GraphError(f"attachment vertex {at} out of range")
    pg, pivot = piece
    return _attach_with_map(host, at, pg, pivot)[0]


def _attach_with_map(host: Graph, at: int, pg: Graph, pivot: int) -> tuple[Graph, list[int]]:
    index = []
    nxt = host.n
    for v in pg.vertices:
        if v == pivot:
            index.append(at)
        else:
            index.append(nxt)
            nxt += 1
    edges = host.edges() + [(index[u], index[v]) for u, v in pg.edges()]
    return Graph(nxt, edges), index


@dataclass(frozen=True)
class TreeOfChandeliersSpec:
    """Blocks built in order; block ``i > 0`` has its pivot identified onto ``at[i]``,
    a vertex of the graph realized from blocks ``0..i-1``."""

    blocks: tuple[ChandelierSpec, ...]
    at: tuple[int | None, ...]

    def __post_init__(self):
        if not self.blocks or len(self.blocks) != len(self.at):
            raise SpecError("need one attachment point per block")


def tree_of_chandeliers(spec: TreeOfChandeliersSpec) -> tuple[Graph, list[list[int]]]:
    """Realize; returns the graph and, per block, its local-to-realized vertex map."""
    g, _ = chandelier(spec.blocks[0])
    maps = [list(range(g.n))]
    for block, at in zip(spec.blocks[1:], spec.at[1:]):
        pg, pivot = chandelier(block)
        if at is None or not 0 <= at < g.n:
            raise SpecError(f"bad attachment vertex {at}")
        g, index = _attach_with_map(g, at, pg, pivot)
        maps.append(index)
    return g, maps


def subdivide_tree_of_chandeliers(
    spec: TreeOfChandeliersSpec, lengths: Mapping[tuple[int, int], int]
) -> TreeOfChandeliersSpec:
    """A tree-of-chandeliers spec realizing the subdivision of ``spec`` with the given
    per-edge path lengths (edges in realized numbering, ``u < v``; missing edges keep length 1).

    Tree edges are subdivided inside their tree; pivot-leaf edges extend the
    leaf into a longer pendant path; a subdivided ``K2`` block becomes a
    chain of ``K2`` blocks.
    """
    _, maps = tree_of_chandeliers(spec)
    new_blocks: list[ChandelierSpec] = []
    new_at: list[int | None] = []
    newmap: dict[int, int] = {}
    count = 0

    def length(a: int, b: int) -> int:
        return lengths.get((min(a, b), max(a, b)), 1)

    def emit(block: ChandelierSpec, at_new: int | None, local_old: dict[int, int]):
        """Append a block; ``local_old`` maps new-block local vertices to old realized ones."""
        nonlocal count
        pg, pivot = chandelier(block)
        if at_new is None:
            local_new = list(range(pg.n))
            count = pg.n
        else:
            local_new = []
            for v in pg.vertices:
                if v == pivot:
                    local_new.append(at_new)
                else:
                    local_new.append(count)
                    count += 1
        new_blocks.append(block)
        new_at.append(at_new)
        for loc, old in local_old.items():
            newmap.setdefault(old, local_new[loc])
        return local_new

    for bi, (block, lmap) in enumerate(zip(spec.blocks, maps)):
        at_new = None if bi == 0 else newmap[spec.at[bi]]
        if block.degenerate == "K1":
            emit(block, at_new, {0: lmap[0]})
            continue
        if block.degenerate == "K2":
            p, q = block.pivot, 1 - block.pivot
            L = length(lmap[0], lmap[1])
            if L == 1:
                emit(block, at_new, {0: lmap[0], 1: lmap[1]})
                continue
            # chain of K2 blocks from the pivot to q
            local_new = emit(ChandelierSpec(degenerate="K2", pivot=0), at_new, {0: lmap[p]})
            prev = local_new[1]
            for step in range(1, L):
                last = step == L - 1
                local_new = emit(
                    ChandelierSpec(degenerate="K2", pivot=0), prev, {1: lmap[q]} if last else {}
                )
                prev = local_new[1]
            continue
        t = block.tree
        pivot = t.n
        tedges = []
        nxt = t.n
        pendant: dict[int, int] = {}  # old leaf -> new leaf at the end of its extension
        for a, b in t.edges():
            L = length(lmap[a], lmap[b])
            seq = [a] + list(range(nxt, nxt + L - 1)) + [b]
            nxt += L - 1
            tedges.extend(zip(seq, seq[1:]))
        for v in t.vertices:
            if t.degree(v) == 1:
                L = length(lmap[v], lmap[pivot])
                seq = [v] + list(range(nxt, nxt + L - 1))
                nxt += L - 1
                tedges.extend(zip(seq, seq[1:]))
                pendant[v] = seq[-1]
        new_tree = Graph(nxt, tedges)
        local_old = {v: lmap[v] for v in t.vertices}
        local_old[nxt] = lmap[pivot]  # new pivot is numbered after the new tree
        emit(ChandelierSpec(tree=new_tree), at_new, local_old)
    return TreeOfChandeliersSpec(tuple(new_blocks), tuple(new_at))


# lamps


@dataclass(frozen=True)
class LampSpec:
    tree: Graph
    root: int
    w: tuple[int, ...]
    J: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))
        object.__setattr__(self, "J", frozenset(self.J))

    def validate(self) -> None:
        t, w = self.tree, self.w
        if not is_tree(t):
            raise InvalidTree("lamp base is not a tree")
        if not 0 <= self.root < t.n:
            raise InvalidTree("root out of range")
        if len(w) != t.n or any(x < 1 for x in w):
            raise InvalidHeightFunction("values", "w must assign a positive integer to every vertex")
        for v in t.vertices:
            if v == self.root:
                continue
            higher = [u for u in t.neighbors(v) if w[u] > w[v]]
            if len(higher) != 1:
                raise InvalidHeightFunction(
                    "unique-higher-neighbour", f"vertex {v} has {len(higher)} higher neighbours"
                )
        if 1 not in w:
            raise InvalidHeightFunction("some-vertex-at-1", "no vertex has w = 1")
        seen: dict[int, int] = {}
        for v, x in enumerate(w):
            if x != 1 and x in seen:
                raise InvalidHeightFunction("duplicates-only-at-1", f"vertices {seen[x]} and {v} share w = {x}")
            seen[x] = v
        top = w[self.root]
        if any(not 1 <= j <= top for j in self.J):
            raise InvalidJ(f"J must lie in [1, {top}]")
        if self.J & set(w) != {1}:
            raise InvalidJ("J must meet the set of heights in exactly {1}")


def lamp(spec: LampSpec) -> tuple[Graph, int]:
    """Realize a lamp; vertices ``x_j`` follow the tree vertices in increasing ``j``. Returns (graph, plug)."""
    spec.validate()
    t, w = spec.tree, spec.w
    edges = list(t.edges())
    js = sorted(spec.J)
    for idx, j in enumerate(js):
        x = t.n + idx
        if t.n == 1:
            if j == 1:
                edges.append((x, spec.root))
            continue
        for a, b in t.edges():
            for u, v in ((a, b), (b, a)):
                if w[v] <= j < w[u]:
                    edges.append((x, v))
    return Graph(t.n + len(js), edges), t.n + js.index(1)


def lamp_for_chandelier(spec: ChandelierSpec) -> LampSpec:
    """A lamp spec realizing a graph isomorphic to the chandelier (trees with >= 3 vertices).

    Root at the lowest-index internal vertex, leaves at height 1 and internal
    vertices at distinct heights increasing towards the root.
    """
    t = spec.tree
    if spec.degenerate is not None or t is None or t.n < 3:
        raise SpecError("only chandeliers on trees with at least 3 vertices are lamps")
    root = min(v for v in t.vertices if t.degree(v) > 1)
    w = [1] * t.n
    height = 1
    seen = {root}
    order: list[int] = []

    def post(v: int) -> None:
        for u in t.neighbors(v):
            if u not in seen:
                seen.add(u)
                post(u)
        order.append(v)

    post(root)
    for v in order:
        if t.degree(v) > 1:
            height += 1
            w[v] = height
    return LampSpec(t, root, tuple(w), frozenset({1}))


# trees of lamps


@dataclass(frozen=True)
class TreeOfLampsSpec:
    """``lamp is None`` is the spotlight.  ``children`` maps lamp vertices to
    subtrees; vertices not listed carry a spotlight."""

    lamp: LampSpec | None = None
    children: tuple[tuple[int, "TreeOfLampsSpec"], ...] = field(default=())

    @classmethod
    def spotlight(cls) -> "TreeOfLampsSpec":
        return cls()

    @property
    def is_spotlight(self) -> bool:
        return self.lamp is None

    @property
    def height(self) -> int:
        if self.lamp is None:
            return 0
        return 1 + max((c.height for _, c in self.children), default=0)


def tree_of_lamps(spec: TreeOfLampsSpec) -> tuple[Graph, int]:
    """Realize by identifying each lamp vertex with the plug of its child. Returns (graph, plug)."""
    if spec.lamp is None:
        if spec.children:
            raise SpecError("a spotlight has no children")
        return Graph(1), 0
    g, plug = lamp(spec.lamp)
    kids = dict(spec.children)
    if len(kids) != len(spec.children):
        raise SpecError("duplicate child position")
    base_n = g.n
    for v in sorted(kids):
        child = kids[v]
        if not 0 <= v < base_n:
            raise SpecError(f"child attached at missing lamp vertex {v}")
        if child.is_spotlight:
            continue
        if v == plug or g.has_edge(v, plug):
            raise SpotlightViolation(f"vertex {v} is the plug or adjacent to it but carries a non-spotlight")
        g = attach(g, v, tree_of_lamps(child))
    return g, plug


def forest_of_lamps(specs: Sequence[TreeOfLampsSpec]) -> Graph:
    edges = []
    off = 0
    for s in specs:
        h, _ = tree_of_lamps(s)
        edges.extend((u + off, v + off) for u, v in h.edges())
        off += h.n
    return Graph(off, edges)


# corpus


def mycielski(g: Graph) -> Graph:
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph(2 * n + 1, edges)


def mycielski_iterate(k: int) -> Graph:
    """Triangle-free graph with chromatic number ``k``: ``k - 2`` Mycielski steps from ``K_2``."""
    if k < 1:
        raise SpecError("k must be positive")
    if k == 1:
        return Graph(1)
    g = complete(2)
    for _ in range(k - 2):
        g = mycielski(g)
    return g


def random_gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def corpus(kind: str, *args, **kwargs) -> Graph:
    """Named corpus graphs: ``mycielski_iterate(k)``, ``complete_bipartite(m, m)``,
    ``cycle(n)``, ``random_gnp(n, p, seed)``."""
    table = {
        "mycielski_iterate": mycielski_iterate,
        "complete_bipartite": complete_bipartite,
        "cycle": cycle,
        "random_gnp": random_gnp,
    }
    try:
        fn = table[kind]
    except KeyError:
        raise SpecError(f"unknown corpus kind {kind!r}") from None
    return fn(*args, **kwargs)
