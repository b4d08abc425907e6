"""Finite simple graphs on vertices ``0..n-1``.

Adjacency is stored as one integer bitmask per vertex, which keeps the
exact solvers in :mod:`pervade.coloring` and :mod:`pervade.containment`
cheap without pulling in a graph library.
"""

from __future__ import annotations

import time
from collections import deque
from typing import Iterable, Iterator, Sequence

INF = float("inf")


class GraphError(ValueError):
    pass


class NotAClique(GraphError):
    pass


class BudgetExceeded(Exception):
    """Raised internally when a search runs past its deadline."""


class Budget:
    """Wall-clock deadline shared by a search.  ``None`` seconds means no limit."""

    __slots__ = ("seconds", "deadline", "_ticks")

    def __init__(self, seconds: float | None = None):
        self.seconds = seconds
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self._ticks = 0

    def check(self) -> None:
        if self.deadline is None:
            return
        self._ticks += 1
        if self._ticks & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def remaining(self) -> float | None:
        if self.deadline is None:
            return None
        return max(0.0, self.deadline - time.monotonic())


def as_budget(budget: "Budget | float | None") -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph.

    ``adj[v]`` is the bitmask of neighbours of ``v``.  Two graphs compare
    equal when they have identical vertex numbering and edges.
    """

    __slots__ = ("n", "adj", "labels", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError("negative vertex count")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        if labels is not None and len(labels) != n:
            raise GraphError("label count does not match vertex count")
        self.labels = tuple(labels) if labels is not None else None
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int], labels: Sequence[str] | None = None) -> "Graph":
        g = cls.__new__(cls)
        n = len(masks)
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full or (m >> v) & 1:
                raise GraphError(f"bad adjacency mask at vertex {v}")
        for v, m in enumerate(masks):
            for u in bits(m):
                if not (masks[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        g.n = n
        g.adj = tuple(masks)
        g.labels = tuple(labels) if labels is not None else None
        g._hash = None
        return g

    # basic queries

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # set relations, all over bitmasks

    def nbr_mask(self, mask: int) -> int:
        """Vertices with at least one neighbour in ``mask`` (may meet ``mask``)."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = to_mask(vs)
        return len(set(vs)) == len(vs) and all((self.adj[v] | (1 << v)) & mask == mask for v in vs)

    def is_stable(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def complete_to(self, xs: Iterable[int], ys: Iterable[int]) -> bool:
        xm, ym = to_mask(xs), to_mask(ys)
        if xm & ym:
            return False
        return all(self.adj[x] & ym == ym for x in bits(xm))

    def anticomplete_to(self, xs: Iterable[int], ys: Iterable[int]) -> bool:
        xm, ym = to_mask(xs), to_mask(ys)
        if xm & ym:
            return False
        return not (self.nbr_mask(xm) & ym)

    def covers(self, xs: Iterable[int], ys: Iterable[int]) -> bool:
        """``xs`` covers ``ys``: disjoint, and every member of ``ys`` has a neighbour in ``xs``."""
        xm, ym = to_mask(xs), to_mask(ys)
        if xm & ym:
            return False
        return all(self.adj[y] & xm for y in bits(ym))

    # derived graphs

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` (sorted); returns it with the new→old map."""
        old = sorted(set(vertices))
        for v in old:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} out of range")
        index = {v: i for i, v in enumerate(old)}
        masks = []
        for v in old:
            m = 0
            for u in bits(self.adj[v]):
                j = index.get(u)
                if j is not None:
                    m |= 1 << j
            masks.append(m)
        labels = [self.labels[v] for v in old] if self.labels else None
        return Graph.from_masks(masks, labels), old

    def induced_mask(self, mask: int) -> tuple["Graph", list[int]]:
        return self.induced(bits(mask))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph.from_masks([(full & ~a) & ~(1 << v) for v, a in enumerate(self.adj)])


def popcount(x: int) -> int:
    return x.bit_count()


# traversal


def bfs_distances(g: Graph, source: int, within: int | None = None) -> list[float]:
    """Distances from ``source`` inside ``G[within]`` (``within`` is a mask; default all)."""
    allowed = g.full_mask if within is None else within
    dist = [INF] * g.n
    if not (allowed >> source) & 1:
        return dist
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = g.nbr_mask(frontier) & allowed & ~seen
        for v in bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def distance_layers(g: Graph, source: int, within: int | None = None) -> list[int]:
    """Masks of the distance classes ``L_0, L_1, ...`` from ``source`` in ``G[within]``."""
    allowed = g.full_mask if within is None else within
    layers = [1 << source]
    seen = 1 << source
    while True:
        nxt = g.nbr_mask(layers[-1]) & allowed & ~seen
        if not nxt:
            return layers
        layers.append(nxt)
        seen |= nxt


def distance(g: Graph, u: int, v: int) -> float:
    return bfs_distances(g, u)[v]


def ball(g: Graph, v: int, radius: int) -> int:
    """Mask of ``N^radius[v]``."""
    reach = 1 << v
    frontier = reach
    for _ in range(radius):
        frontier = g.nbr_mask(frontier) & ~reach
        if not frontier:
            break
        reach |= frontier
    return reach


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as masks, ordered by smallest member."""
    remaining = g.full_mask if within is None else within
    comps = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            frontier = g.nbr_mask(frontier) & remaining & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def components(g: Graph) -> list[list[int]]:
    return [list(bits(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def eccentricity(g: Graph, v: int) -> float:
    d = bfs_distances(g, v)
    return max(d) if d else 0


def diameter(g: Graph) -> float:
    return max((eccentricity(g, v) for v in g.vertices), default=0)


def shortest_path(g: Graph, u: int, v: int, within: int | None = None) -> list[int] | None:
    """A shortest ``u``-``v`` path in ``G[within]`` (lowest-index parents), or None."""
    allowed = g.full_mask if within is None else within
    if not ((allowed >> u) & 1 and (allowed >> v) & 1):
        return None
    parent = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in bits(g.adj[x] & allowed):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        return None
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def is_path(g: Graph, seq: Sequence[int]) -> bool:
    """``seq`` lists distinct vertices with consecutive ones adjacent."""
    if not seq or len(set(seq)) != len(seq):
        return False
    return all(g.has_edge(a, b) for a, b in zip(seq, seq[1:]))


def is_induced_path(g: Graph, seq: Sequence[int]) -> bool:
    if not is_path(g, seq):
        return False
    pos = {v: i for i, v in enumerate(seq)}
    for i, v in enumerate(seq):
        for u in bits(g.adj[v]):
            j = pos.get(u)
            if j is not None and abs(i - j) != 1:
                return False
    return True


def neighborhoods(g: Graph, X: Iterable[int]) -> tuple[set[int], set[int]]:
    """First and second neighbourhoods ``(N1, N2)`` of a clique ``X``.

    ``N1`` holds the vertices outside ``X`` complete to ``X``; ``N2`` those
    outside ``X`` with a neighbour in ``N1`` and none in ``X``.
    """
    xs = set(X)
    if not g.is_clique(xs):
        raise NotAClique(f"{sorted(xs)} is not a clique")
    xm = to_mask(xs)
    n1 = 0
    for v in range(g.n):
        if not (xm >> v) & 1 and g.adj[v] & xm == xm:
            n1 |= 1 << v
    n2 = g.nbr_mask(n1) & ~g.nbr_mask(xm) & ~xm & ~n1
    return set(bits(n1)), set(bits(n2))


# small named graphs used across tests and the CLI


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def empty(n: int) -> Graph:
    return Graph(n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for h in graphs:
        edges.extend((u + off, v + off) for u, v in h.edges())
        off += h.n
    return Graph(off, edges)
