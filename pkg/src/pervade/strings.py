"""Polyline string arrangements with exact arithmetic.

Input coordinates are integers; discs have rational centre and radius.
Intersection tests use integer orientation predicates, disc clipping uses
rational parameters, and points where a segment crosses a circle are kept
symbolically as ``c + U + sqrt(D) * V`` with rational ``U``, ``V``, ``D`` so
that their angular order around the disc is decided by exact sign tests.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .coloring import ChromaticResult, ball_chromatic, chromatic_number
from .containment import anticomplete_paths_exist
from .graph import Budget, Graph, as_budget
from .verdict import Verdict

Point = tuple[int, int]


class DegenerateCurve(ValueError):
    pass


class DegenerateBoundary(ValueError):
    pass


@dataclass(frozen=True)
class Polyline:
    id: int
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple((int(x), int(y)) for x, y in self.points)
        for p, q in zip(self.points, pts):
            if tuple(p) != q:
                raise DegenerateCurve(f"curve {self.id}: non-integer point {p}")
        if len(pts) < 2:
            raise DegenerateCurve(f"curve {self.id} has fewer than two points")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise DegenerateCurve(f"curve {self.id} repeats point {a}")
        object.__setattr__(self, "points", pts)

    @property
    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))

    def bbox(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return min(xs), min(ys), max(xs), max(ys)


# exact predicates


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def orient(a: Point, b: Point, c: Point) -> int:
    return _sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    # p collinear with ab
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ``ab`` and ``cd`` share a point."""
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def _boxes_meet(p: Polyline, q: Polyline) -> bool:
    a, b = p.bbox(), q.bbox()
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def curves_intersect(p: Polyline, q: Polyline) -> bool:
    if not _boxes_meet(p, q):
        return False
    return any(segments_intersect(a, b, c, d) for a, b in p.segments for c, d in q.segments)


def segment_overlap(p1, p2, q1, q2):
    """Exact ``p1p2 ∩ q1q2``: None, a point, or a (start, end) pair of rational points."""
    F = Fraction
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (q2[0] - q1[0], q2[1] - q1[1])
    w = (q1[0] - p1[0], q1[1] - p1[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den != 0:
        t = F(w[0] * d2[1] - w[1] * d2[0], den)
        u = F(w[0] * d1[1] - w[1] * d1[0], den)
        if 0 <= t <= 1 and 0 <= u <= 1:
            return (p1[0] + t * d1[0], p1[1] + t * d1[1])
        return None
    if w[0] * d1[1] - w[1] * d1[0] != 0:
        return None
    ll = d1[0] * d1[0] + d1[1] * d1[1]
    s0 = F(w[0] * d1[0] + w[1] * d1[1], ll)
    s1 = F((q2[0] - p1[0]) * d1[0] + (q2[1] - p1[1]) * d1[1], ll)
    lo, hi = max(F(0), min(s0, s1)), min(F(1), max(s0, s1))
    if lo > hi:
        return None
    a = (p1[0] + lo * d1[0], p1[1] + lo * d1[1])
    if lo == hi:
        return a
    return (a, (p1[0] + hi * d1[0], p1[1] + hi * d1[1]))


# arrangements


@dataclass(frozen=True)
class StringArrangement:
    curves: tuple[Polyline, ...]
    graph: Graph

    @property
    def ids(self) -> list[int]:
        return [c.id for c in self.curves]

    def vertex_of(self, curve_id: int) -> int:
        return self.ids.index(curve_id)


def build_string_graph(curves: Iterable[Polyline]) -> StringArrangement:
    curves = tuple(curves)
    if len({c.id for c in curves}) != len(curves):
        raise DegenerateCurve("curve ids must be distinct")
    edges = [(i, j) for i, j in itertools.combinations(range(len(curves)), 2) if curves_intersect(curves[i], curves[j])]
    return StringArrangement(curves, Graph(len(curves), edges))


# discs and clipping


@dataclass(frozen=True)
class Disc:
    cx: Fraction
    cy: Fraction
    r: Fraction

    def __init__(self, cx, cy, r):
        object.__setattr__(self, "cx", Fraction(cx))
        object.__setattr__(self, "cy", Fraction(cy))
        object.__setattr__(self, "r", Fraction(r))
        if self.r <= 0:
            raise ValueError("radius must be positive")

    @property
    def r2(self) -> Fraction:
        return self.r * self.r

    def power(self, p) -> Fraction:
        """Squared distance to the centre minus squared radius (negative inside)."""
        dx, dy = p[0] - self.cx, p[1] - self.cy
        return dx * dx + dy * dy - self.r2

    def contains(self, p) -> bool:
        return self.power(p) <= 0

    def meets_segment(self, a, b) -> bool:
        d = (b[0] - a[0], b[1] - a[1])
        ll = d[0] * d[0] + d[1] * d[1]
        if ll == 0:
            return self.contains(a)
        t = -((a[0] - self.cx) * d[0] + (a[1] - self.cy) * d[1]) / Fraction(ll)
        t = min(Fraction(1), max(Fraction(0), t))
        return self.contains((a[0] + t * d[0], a[1] + t * d[1]))


def _sign_surd(a, b, D) -> int:
    """Sign of ``a + b*sqrt(D)`` for rational ``a, b`` and ``D >= 0``."""
    if D == 0 or b == 0:
        return _sign(a)
    sa, sb = _sign(a), _sign(b)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    return sa * _sign(a * a - b * b * D)


def _sign_surd2(A, B, C, E, D1, D2) -> int:
    """Sign of ``A + B*sqrt(D2) + C*sqrt(D1) + E*sqrt(D1*D2)``."""
    sx = _sign_surd(A, C, D1)
    if D2 == 0:
        return sx
    sz = _sign_surd(B, E, D1)
    if sz == 0:
        return sx
    if sx == 0 or sx == sz:
        return sz if sx == 0 else sx
    # x + sqrt(D2) * z with opposite signs: compare x^2 against D2 * z^2
    rat = A * A + C * C * D1 - D2 * (B * B + E * E * D1)
    irr = 2 * A * C - 2 * D2 * B * E
    return sx * _sign_surd(rat, irr, D1)


@dataclass(frozen=True)
class BoundaryPoint:
    """The point ``centre + U + sqrt(D) * V``."""

    U: tuple[Fraction, Fraction]
    V: tuple[Fraction, Fraction]
    D: Fraction

    def approx(self, disc: Disc) -> tuple[float, float]:
        s = math.sqrt(self.D)
        return (float(disc.cx + self.U[0]) + s * float(self.V[0]), float(disc.cy + self.U[1]) + s * float(self.V[1]))


def _direction(v: tuple[int, int]) -> BoundaryPoint:
    return BoundaryPoint((Fraction(v[0]), Fraction(v[1])), (Fraction(0), Fraction(0)), Fraction(0))


def _cross_sign(p: BoundaryPoint, q: BoundaryPoint) -> int:
    def cr(a, b):
        return a[0] * b[1] - a[1] * b[0]

    return _sign_surd2(cr(p.U, q.U), cr(p.U, q.V), cr(p.V, q.U), cr(p.V, q.V), p.D, q.D)


def _dot_sign(p: BoundaryPoint, q: BoundaryPoint) -> int:
    def dt(a, b):
        return a[0] * b[0] + a[1] * b[1]

    return _sign_surd2(dt(p.U, q.U), dt(p.U, q.V), dt(p.V, q.U), dt(p.V, q.V), p.D, q.D)


def _half(d: BoundaryPoint, w: BoundaryPoint) -> int:
    """0 when the clockwise angle from ``d`` to ``w`` lies in [0, pi), else 1."""
    s = _cross_sign(d, w)
    if s:
        return 0 if s < 0 else 1
    return 0 if _dot_sign(d, w) > 0 else 1


def clockwise_compare(d: BoundaryPoint, p: BoundaryPoint, q: BoundaryPoint) -> int:
    """Compare clockwise angles from ``d``: negative when ``p`` comes first."""
    hp, hq = _half(d, p), _half(d, q)
    if hp != hq:
        return hp - hq
    return _cross_sign(p, q)


def segment_crossings(a: Point, b: Point, disc: Disc) -> tuple[bool, list[BoundaryPoint]]:
    """Whether segment ``ab`` meets the closed disc, and its boundary crossings in order from ``a``."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    px, py = a[0] - disc.cx, a[1] - disc.cy
    A = Fraction(dx * dx + dy * dy)
    B = 2 * (dx * px + dy * py)
    C0 = px * px + py * py - disc.r2
    f1 = A + B + C0
    if C0 == 0 or f1 == 0:
        raise DegenerateBoundary(f"segment endpoint on the boundary: {a}-{b}")
    disc_ = B * B - 4 * A * C0
    tstar = -B / (2 * A)
    U = (px + tstar * dx, py + tstar * dy)

    def root(sign: int) -> BoundaryPoint:
        return BoundaryPoint(U, (sign * dx / (2 * A), sign * dy / (2 * A)), disc_)

    ins_a, ins_b = C0 < 0, f1 < 0
    if ins_a and ins_b:
        return True, []
    if ins_a:
        return True, [root(1)]
    if ins_b:
        return True, [root(-1)]
    if 0 <= tstar <= 1:
        if disc_ == 0:
            raise DegenerateBoundary(f"segment {a}-{b} is tangent to the boundary")
        if disc_ > 0:
            return True, [root(-1), root(1)]
    return False, []


@dataclass(frozen=True)
class ClippedCurve:
    parent: int  # vertex of the source arrangement
    segments: tuple[int, ...]  # indices into the parent's segment list
    crossings: tuple[BoundaryPoint, ...] = field(repr=False)

    @property
    def meets_boundary(self) -> bool:
        return bool(self.crossings)


@dataclass(frozen=True)
class ClippedArrangement:
    source: StringArrangement
    disc: Disc
    pieces: tuple[ClippedCurve, ...]
    graph: Graph

    @property
    def origin(self) -> list[int]:
        """Piece -> parent vertex; a homomorphism of the intersection graphs."""
        return [p.parent for p in self.pieces]

    @property
    def boundary(self) -> list[int]:
        return [i for i, p in enumerate(self.pieces) if p.meets_boundary]

    def parent_id(self, piece: int) -> int:
        return self.source.curves[self.pieces[piece].parent].id


def _pieces_meet(arr: StringArrangement, disc: Disc, p: ClippedCurve, q: ClippedCurve) -> bool:
    ps = arr.curves[p.parent].segments
    qs = arr.curves[q.parent].segments
    for i in p.segments:
        a, b = ps[i]
        for j in q.segments:
            c, d = qs[j]
            if not segments_intersect(a, b, c, d):
                continue
            x = segment_overlap(a, b, c, d)
            if isinstance(x[0], tuple):
                if disc.meets_segment(*x):
                    return True
            elif disc.contains(x):
                return True
    return False


def _merge_runs(arr: StringArrangement, disc: Disc, runs: list[ClippedCurve]) -> list[ClippedCurve]:
    """Union runs of one self-crossing curve that meet inside the disc."""
    parent = list(range(len(runs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in itertools.combinations(range(len(runs)), 2):
        if find(i) != find(j) and _pieces_meet(arr, disc, runs[i], runs[j]):
            parent[find(j)] = find(i)
    groups: dict[int, list[ClippedCurve]] = {}
    for i, r in enumerate(runs):
        groups.setdefault(find(i), []).append(r)
    return [
        ClippedCurve(g[0].parent, tuple(x for r in g for x in r.segments), tuple(c for r in g for c in r.crossings))
        for _, g in sorted(groups.items())
    ]


def clip_to_disc(arr: StringArrangement, disc: Disc) -> ClippedArrangement:
    """Split every curve into the connected components of its intersection with the closed disc.

    A component is a maximal run of consecutive segments joined at interior
    points, merged with any other run of the same curve it crosses.
    """
    pieces: list[ClippedCurve] = []
    for v, curve in enumerate(arr.curves):
        runs: list[ClippedCurve] = []
        segs: list[int] = []
        cross: list[BoundaryPoint] = []
        for i, (a, b) in enumerate(curve.segments):
            meets, pts = segment_crossings(a, b, disc)
            joined = i > 0 and segs and segs[-1] == i - 1 and disc.power(a) < 0
            if segs and not joined:
                runs.append(ClippedCurve(v, tuple(segs), tuple(cross)))
                segs, cross = [], []
            if meets:
                segs.append(i)
                cross.extend(pts)
        if segs:
            runs.append(ClippedCurve(v, tuple(segs), tuple(cross)))
        pieces.extend(_merge_runs(arr, disc, runs) if len(runs) > 1 else runs)
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(pieces)), 2)
        if _pieces_meet(arr, disc, pieces[i], pieces[j])
    ]
    return ClippedArrangement(arr, disc, tuple(pieces), Graph(len(pieces), edges))


def clip_with_jitter(arr: StringArrangement, disc: Disc, tries: int = 50, step=Fraction(1, 997)):
    """Clip, growing the radius by ``step`` until no boundary degeneracy remains.

    Returns ``(clipped, disc_used, jitter)`` so callers can report the perturbation.
    """
    for k in range(tries):
        d = Disc(disc.cx, disc.cy, disc.r + k * step)
        try:
            return clip_to_disc(arr, d), d, k * step
        except DegenerateBoundary:
            continue
    raise DegenerateBoundary(f"still degenerate after {tries} radius perturbations")


def _grid_directions(level: int) -> list[tuple[int, int]]:
    """Primitive integer directions of Chebyshev norm ``level``, clockwise from +x."""
    out = []
    for x in range(-level, level + 1):
        for y in range(-level, level + 1):
            if max(abs(x), abs(y)) == level and math.gcd(x, y) == 1:
                out.append((x, y))
    east = _direction((1, 0))
    key = functools.cmp_to_key(lambda p, q: clockwise_compare(east, _direction(p), _direction(q)))
    return sorted(out, key=key)


def choose_start(points: Sequence[BoundaryPoint], max_level: int = 256) -> tuple[int, int]:
    """First grid direction whose boundary point is not a crossing point."""
    for level in range(1, max_level + 1):
        for d in _grid_directions(level):
            dd = _direction(d)
            if not any(_cross_sign(dd, w) == 0 and _dot_sign(dd, w) > 0 for w in points):
                return d
    raise DegenerateBoundary("no free start direction found")


@dataclass(frozen=True)
class BoundaryOrder:
    clipped: ClippedArrangement
    order: tuple[int, ...]  # pieces of the clipped arrangement
    start: tuple[int, int]  # direction of d from the centre


def boundary_order(arr: StringArrangement | ClippedArrangement, disc: Disc | None = None) -> BoundaryOrder:
    """Boundary-meeting pieces ordered clockwise by first crossing after ``d``; ties by curve id."""
    clipped = arr if isinstance(arr, ClippedArrangement) else clip_to_disc(arr, disc)
    pts = [w for p in clipped.pieces for w in p.crossings]
    if not pts:
        return BoundaryOrder(clipped, (), (1, 0))
    d = choose_start(pts)
    dd = _direction(d)
    cmp = functools.cmp_to_key(lambda p, q: clockwise_compare(dd, p, q))
    first = {i: min(clipped.pieces[i].crossings, key=cmp) for i in clipped.boundary}

    def by_first(i, j):
        c = clockwise_compare(dd, first[i], first[j])
        if c:
            return c
        return _sign((clipped.parent_id(i), i) > (clipped.parent_id(j), j)) or -1

    order = sorted(clipped.boundary, key=functools.cmp_to_key(by_first))
    return BoundaryOrder(clipped, tuple(order), d)


def check_cross_property(g: Graph, seq: Sequence[int], budget: Budget | float | None = None) -> Verdict:
    """Reject with 1-based positions (h, i, j, k) when v_h-v_j and v_i-v_k admit anticomplete paths."""
    if len(set(seq)) != len(seq):
        raise ValueError("sequence has repeated vertices")
    bud = as_budget(budget)
    for h, i, j, k in itertools.combinations(range(len(seq)), 4):
        r = anticomplete_paths_exist(g, seq[h], seq[j], seq[i], seq[k], bud)
        if r is None:
            return Verdict.timeout()
        if r:
            return Verdict.reject("cross", f"anticomplete paths for positions {h + 1},{i + 1},{j + 1},{k + 1}", h + 1, i + 1, j + 1, k + 1)
    return Verdict.accept(quadruples=math.comb(len(seq), 4))


@dataclass(frozen=True)
class ChiAudit:
    chi: ChromaticResult
    chi3: ChromaticResult

    @property
    def exact(self) -> bool:
        return self.chi.exact and self.chi3.exact

    @property
    def bound_holds(self) -> bool | None:
        """``chi <= 40 chi^3`` when decided by the brackets, else None."""
        if self.chi.upper <= 40 * self.chi3.lower:
            return True
        if self.chi.lower > 40 * self.chi3.upper:
            return False
        return None


def audit_40chi3(arr: StringArrangement | Graph, budget: Budget | float | None = None) -> ChiAudit:
    g = arr if isinstance(arr, Graph) else arr.graph
    bud = as_budget(budget)
    return ChiAudit(chromatic_number(g, bud), ball_chromatic(g, 3, bud))


def suggest_disc(arr: StringArrangement, S1: Iterable[int], S2: Iterable[int], precision: int = 16) -> Disc | None:
    """A disc holding the curves ``S1`` (vertex indices) in its interior and missing ``S2``, or None.

    Centre: the bounding-box centre of ``S1``; radius: the smallest dyadic
    value (``2**-precision`` grid) putting every ``S1`` vertex strictly inside.
    """
    S1, S2 = list(S1), list(S2)
    if not S1:
        return None
    pts = [p for v in S1 for p in arr.curves[v].points]
    cx = Fraction(min(p[0] for p in pts) + max(p[0] for p in pts), 2)
    cy = Fraction(min(p[1] for p in pts) + max(p[1] for p in pts), 2)
    far = max((p[0] - cx) ** 2 + (p[1] - cy) ** 2 for p in pts)
    scale = 1 << precision
    r = Fraction(math.isqrt(math.floor(far * scale * scale)) + 1, scale)
    disc = Disc(cx, cy, r)
    if any(disc.power(p) >= 0 for p in pts):
        return None
    for v in S2:
        for a, b in arr.curves[v].segments:
            if disc.meets_segment(a, b):
                return None
    return disc


# seeded instances


def random_polyline(rng: random.Random, cid: int, segments: int, box: int = 100, step: int | None = None) -> Polyline:
    """A random walk of ``segments`` steps inside ``[0, box]^2``."""
    step = step or max(2, box // 4)
    pts = [(rng.randint(0, box), rng.randint(0, box))]
    while len(pts) < segments + 1:
        x, y = pts[-1]
        q = (min(box, max(0, x + rng.randint(-step, step))), min(box, max(0, y + rng.randint(-step, step))))
        if q != pts[-1]:
            pts.append(q)
    return Polyline(cid, tuple(pts))


def random_arrangement(seed: int, n_curves: int, max_segments: int = 6, box: int = 100, step: int | None = None) -> StringArrangement:
    rng = random.Random(seed)
    curves = [random_polyline(rng, i, rng.randint(1, max_segments), box, step) for i in range(n_curves)]
    return build_string_graph(curves)
