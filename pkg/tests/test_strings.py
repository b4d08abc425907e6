import itertools
import math
import random
from fractions import Fraction

import pytest

from pervade.graph import Budget, Graph, path
from pervade.strings import (
    DegenerateBoundary,
    DegenerateCurve,
    Disc,
    Polyline,
    audit_40chi3,
    boundary_order,
    build_string_graph,
    check_cross_property,
    clip_to_disc,
    clip_with_jitter,
    random_arrangement,
    segment_overlap,
    suggest_disc,
)

from conftest import isomorphic, oracle_graph


def test_small_arrangements():
    x = [Polyline(0, ((0, 0), (10, 10))), Polyline(1, ((0, 10), (10, 0)))]
    assert build_string_graph(x).graph.m == 1
    tri = [Polyline(0, ((0, 0), (10, 10))), Polyline(1, ((0, 10), (10, 0))), Polyline(2, ((0, 4), (10, 6)))]
    assert build_string_graph(tri).graph.m == 3
    par = [Polyline(i, ((0, 2 * i), (10, 2 * i))) for i in range(5)]
    assert build_string_graph(par).graph.m == 0
    # touching endpoints count
    touch = [Polyline(0, ((0, 0), (5, 5))), Polyline(1, ((5, 5), (9, 0)))]
    assert build_string_graph(touch).graph.m == 1


def test_degenerate_curves():
    with pytest.raises(DegenerateCurve):
        Polyline(0, ((0, 0),))
    with pytest.raises(DegenerateCurve):
        Polyline(0, ((0, 0), (0, 0)))
    with pytest.raises(DegenerateCurve):
        Polyline(0, ((0, 0), (0.5, 1)))
    with pytest.raises(DegenerateCurve):
        build_string_graph([Polyline(1, ((0, 0), (1, 1))), Polyline(1, ((2, 2), (3, 3)))])


def test_segment_overlap():
    assert segment_overlap((0, 0), (4, 0), (2, -1), (2, 1)) == (2, 0)
    assert segment_overlap((0, 0), (4, 0), (2, 0), (6, 0)) == ((2, 0), (4, 0))
    assert segment_overlap((0, 0), (4, 0), (5, 0), (6, 0)) is None


def test_adjacency_matches_rational_oracle():
    for seed in range(200):
        rng = random.Random(seed)
        arr = random_arrangement(seed, rng.randint(2, 20), 6, box=rng.choice([10, 30, 100]))
        assert arr.graph == oracle_graph(arr.curves), seed


# clipping

DISC = Disc(0, 0, 5)


def test_clip_straight_through():
    arr = build_string_graph([Polyline(0, ((-10, 1), (10, 1)))])
    cl = clip_to_disc(arr, DISC)
    assert len(cl.pieces) == 1 and cl.boundary == [0] and len(cl.pieces[0].crossings) == 2


def test_clip_enter_and_leave_twice():
    arr = build_string_graph([Polyline(0, ((-10, 1), (10, 1), (10, -1), (-10, -1)))])
    cl = clip_to_disc(arr, DISC)
    assert len(cl.pieces) == 2 and cl.boundary == [0, 1]
    assert cl.origin == [0, 0] and cl.graph.m == 0


def test_clip_fully_inside_and_outside():
    arr = build_string_graph([Polyline(0, ((-1, 0), (1, 1))), Polyline(1, ((20, 0), (30, 0)))])
    cl = clip_to_disc(arr, DISC)
    assert len(cl.pieces) == 1 and cl.boundary == [] and cl.origin == [0]


def test_clip_self_crossing_curve_is_one_piece():
    # a bow: leaves the disc and comes back crossing its own first segment
    arr = build_string_graph([Polyline(0, ((-10, 0), (10, 0), (10, 8), (0, -3)))])
    cl = clip_to_disc(arr, Disc(0, 0, 6))
    assert len(cl.pieces) == 1 and cl.pieces[0].segments == (0, 2)


def test_clip_degenerate_boundary():
    arr = build_string_graph([Polyline(0, ((5, 0), (10, 0)))])
    with pytest.raises(DegenerateBoundary):
        clip_to_disc(arr, DISC)
    tangent = build_string_graph([Polyline(0, ((-10, 5), (10, 5)))])
    with pytest.raises(DegenerateBoundary):
        clip_to_disc(tangent, DISC)
    cl, disc, jitter = clip_with_jitter(tangent, DISC)
    assert jitter > 0 and disc.r == DISC.r + jitter and len(cl.pieces) == 1


def test_origin_is_homomorphism():
    for seed in range(60):
        rng = random.Random(seed)
        arr = random_arrangement(seed, 12, 5, box=60, step=25)
        disc = Disc(Fraction(30) + Fraction(1, 7), Fraction(30) + Fraction(2, 11), rng.randint(10, 25) + Fraction(1, 13))
        cl, _, _ = clip_with_jitter(arr, disc)
        o = cl.origin
        for u, v in cl.graph.edges():
            assert o[u] != o[v] and arr.graph.has_edge(o[u], o[v])


# boundary order


def _cw_angle(start, p, centre) -> float:
    a0 = math.atan2(start[1], start[0])
    a = math.atan2(p[1] - centre[1], p[0] - centre[0])
    return (a0 - a) % (2 * math.pi)


def _float_crossings(a, b, disc):
    cx, cy, r = float(disc.cx), float(disc.cy), float(disc.r)
    dx, dy = b[0] - a[0], b[1] - a[1]
    px, py = a[0] - cx, a[1] - cy
    A, B, C = dx * dx + dy * dy, 2 * (dx * px + dy * py), px * px + py * py - r * r
    D = B * B - 4 * A * C
    if D <= 0:
        return []
    out = []
    for s in (-1, 1):
        t = (-B + s * math.sqrt(D)) / (2 * A)
        if 0 <= t <= 1:
            out.append((a[0] + t * dx, a[1] + t * dy))
    return out


def test_order_examples():
    disc = Disc(0, 0, 10)
    # clockwise about 10 degrees below +x, and about 200 degrees clockwise
    a = Polyline(5, ((1, 0), (20, -3)))
    b = Polyline(2, ((-1, 1), (-20, 7)))
    bo = boundary_order(build_string_graph([a, b]), disc)
    assert bo.start == (1, 0)
    assert [bo.clipped.parent_id(i) for i in bo.order] == [5, 2]
    assert boundary_order(build_string_graph([Polyline(0, ((0, 0), (1, 1)))]), disc).order == ()
    # a chord with hits near 30 and 300 degrees clockwise sorts by its first hit
    chord = Polyline(0, ((10, -12), (3, 15)))
    mid = Polyline(1, ((-1, -2), (-5, -20)))
    bo = boundary_order(build_string_graph([mid, chord]), disc)
    assert [bo.clipped.parent_id(i) for i in bo.order] == [0, 1]


def test_start_direction_avoids_crossings():
    disc = Disc(0, 0, 10)
    # a segment through (10, 0) blocks +x
    arr = build_string_graph([Polyline(0, ((0, 0), (20, 0))), Polyline(1, ((0, 3), (-20, 3)))])
    bo = boundary_order(arr, disc)
    assert bo.start != (1, 0)


def test_order_matches_float_angles():
    checked = 0
    for seed in range(80):
        rng = random.Random(seed)
        arr = random_arrangement(seed, 10, 4, box=60, step=25)
        disc = Disc(Fraction(30) + Fraction(1, 7), Fraction(30) + Fraction(2, 11), rng.randint(10, 25) + Fraction(1, 13))
        cl, disc, _ = clip_with_jitter(arr, disc)
        bo = boundary_order(cl)
        centre = (float(disc.cx), float(disc.cy))
        first = {}
        for i in cl.boundary:
            segs = arr.curves[cl.pieces[i].parent].segments
            pts = [p for s in cl.pieces[i].segments for p in _float_crossings(*segs[s], disc)]
            first[i] = min(_cw_angle(bo.start, p, centre) for p in pts)
        vals = sorted(first.values())
        if any(b - a < 1e-9 for a, b in zip(vals, vals[1:])):
            continue  # shared crossing points; the exact tie-break decides
        assert list(bo.order) == sorted(first, key=first.get), seed
        checked += 1
    assert checked > 50


# cross property


def test_cross_property_examples():
    assert check_cross_property(path(4), [0, 1, 2, 3])
    two = Graph(4, [(0, 2), (1, 3)])
    v = check_cross_property(two, [0, 1, 2, 3])
    assert v.clause == "cross" and v.witness == (1, 2, 3, 4)
    assert check_cross_property(two, [0, 1, 2])
    with pytest.raises(ValueError):
        check_cross_property(two, [0, 0, 1, 2])


def test_cross_property_timeout():
    from pervade.burling import burling

    g = burling(4).g
    v = check_cross_property(g, [7, 14, 21, 28, 35], Budget(0.0))
    assert v.timed_out and str(v) == "Timeout"


# audit and discs


def test_audit_examples():
    one = audit_40chi3(build_string_graph([Polyline(0, ((0, 0), (1, 1)))]))
    assert one.chi.value == one.chi3.value == 1 and one.bound_holds
    k5 = build_string_graph([Polyline(k, ((-10, -k), (10, k))) for k in range(5)])
    assert isomorphic(k5.graph, Graph(5, list(itertools.combinations(range(5), 2))))
    a = audit_40chi3(k5)
    assert a.exact and a.chi.value == a.chi3.value == 5 and a.bound_holds


def test_suggest_disc():
    arr = build_string_graph([Polyline(0, ((0, 0), (2, 1))), Polyline(1, ((50, 50), (60, 50)))])
    d = suggest_disc(arr, [0], [1])
    assert d is not None
    assert all(d.power(p) < 0 for p in arr.curves[0].points)
    assert not any(d.meets_segment(a, b) for a, b in arr.curves[1].segments)
    # a box tightly around S1: a good region exists, but no centred disc fits
    ring = [((-5, -5), (5, -5)), ((5, -5), (5, 5)), ((5, 5), (-5, 5)), ((-5, 5), (-5, -5))]
    boxed = build_string_graph([Polyline(0, ((-4, -4), (4, 4)))] + [Polyline(i + 1, s) for i, s in enumerate(ring)])
    assert suggest_disc(boxed, [0], [1, 2, 3, 4]) is None
    assert suggest_disc(arr, [], [1]) is None
