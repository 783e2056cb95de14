from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from toral.circulant import build_S
from toral.graph import K5, connectivity, is_isomorphic
from toral.torus import (
    CurveSpec,
    HomologyClass,
    KnotType,
    LinkType,
    arrangement,
    check_corner_path,
    classify_knot,
    classify_link,
    crossing_violations,
    cycle_class,
    find_corner_path,
    intersection_count,
    is_embedded,
    knot_link_census,
    corner_arrangement,
    linking_number,
    mirror,
    mirror_graph,
    reduce_arrangement_to_S,
    simple_cycles,
    subdivide_edges,
    torus_graph,
)

classes = st.tuples(st.integers(-5, 5), st.integers(-5, 5)).filter(lambda c: gcd(*c) == 1)


def brute_crossings(c1, c2, o1=Fraction(1, 7), o2=Fraction(2, 11)):
    """Count t, u in [0,1) with c1 t + (0,o1) = c2 u + (0,o2) mod Z^2 by
    solving the 2x2 system for every integer shift in a generous box."""
    (a1, b1), (a2, b2) = c1, c2
    det = a1 * (-b2) - (-a2) * b1
    if det == 0:
        return 0
    hits = set()
    box = range(-12, 13)
    for m in box:
        for n in box:
            rx, ry = Fraction(m), o2 - o1 + n
            t = (rx * (-b2) - (-a2) * ry) / det
            u = (a1 * ry - b1 * rx) / det
            if 0 <= t < 1 and 0 <= u < 1:
                hits.add((t, u))
    return len(hits)


def gauss_linking(c, samples=600):
    """Numeric Gauss integral for two parallel copies of class c on the torus
    of revolution with radii 2 and 1, meridian angle reversed."""
    a, b = c
    t = np.arange(samples) / samples

    def curve(shift_x, shift_y):
        th = 2 * np.pi * (shift_x + a * t)
        ph = -2 * np.pi * (shift_y + b * t)
        r = 2 + np.cos(ph)
        return np.stack([r * np.cos(th), r * np.sin(th), np.sin(ph)], axis=1)

    if a:
        p, q = curve(0.0, 1 / 7), curve(0.0, 1 / 7 + 1 / (2 * abs(a)))
    else:
        p, q = curve(0.0, 1 / 7), curve(1 / (2 * abs(b)), 1 / 7)
    dp = np.roll(p, -1, axis=0) - p
    dq = np.roll(q, -1, axis=0) - q
    mp, mq = p + dp / 2, q + dq / 2
    diff = mp[:, None, :] - mq[None, :, :]
    cross = np.cross(dp[:, None, :], dq[None, :, :])
    val = np.sum(np.einsum("ijk,ijk->ij", diff, cross) / np.linalg.norm(diff, axis=2) ** 3)
    return val / (4 * np.pi)


# -- homology ------------------------------------------------------------------


def test_linking_basics():
    assert linking_number((1, 1)) == 1
    assert linking_number((1, -1)) == -1
    assert linking_number((1, 0)) == 0
    assert linking_number((0, 1)) == 0


@pytest.mark.parametrize("c", [(1, 1), (1, -1), (1, 0), (1, 2), (2, 3), (3, -2)])
def test_linking_matches_gauss_integral(c):
    assert linking_number(c) == round(gauss_linking(c))
    assert abs(gauss_linking(c) - round(gauss_linking(c))) < 0.05


@settings(max_examples=60, deadline=None)
@given(classes)
def test_linking_is_product_and_mirror_flips(c):
    assume(c != (0, 0))
    assert linking_number(c) == c[0] * c[1]
    assert linking_number(mirror(c)) == -linking_number(c)


@given(classes)
def test_mirror_involution(c):
    assert mirror(mirror(c)) == HomologyClass(*c)


def test_knot_and_link_types():
    assert classify_knot((2, 3)) == KnotType.TORUS
    assert classify_knot((1, 5)) == KnotType.TRIVIAL
    assert classify_knot((0, 0)) == KnotType.TRIVIAL
    assert classify_link((1, 1), 2) == LinkType.HOPF
    assert classify_link((1, 2), 2) == LinkType.TORUS


# -- arrangements --------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(classes, classes)
def test_arrangement_laws(c1, c2):
    assume(intersection_count(c1, c2) > 0)
    tg = arrangement([CurveSpec(HomologyClass(*c1)), CurveSpec(HomologyClass(*c2))])
    n = tg.graph.num_vertices()
    assert n == abs(c1[0] * c2[1] - c1[1] * c2[0]) == brute_crossings(c1, c2)
    assert tg.graph.num_edges() == 2 * n
    assert all(tg.graph.degree(v) == 4 for v in tg.vertices)
    assert is_embedded(tg)


def test_parallel_curves_give_a_link():
    tg = arrangement([CurveSpec(HomologyClass(1, 2)), CurveSpec(HomologyClass(-1, -2))])
    assert tg.graph.num_vertices() == 2 and tg.graph.num_edges() == 2
    assert is_embedded(tg)
    assert knot_link_census(tg).links == [(HomologyClass(1, 2), 2)]


def test_k5_from_small_arrangement():
    tg = arrangement([CurveSpec(HomologyClass(2, 3)), CurveSpec(HomologyClass(1, -1))])
    assert tg.graph.num_vertices() == 5
    assert is_isomorphic(tg.graph, K5) is not None


def test_mirror_graph_involution_and_classes():
    tg = arrangement([CurveSpec(HomologyClass(2, 3)), CurveSpec(HomologyClass(1, -2))])
    mm = mirror_graph(mirror_graph(tg))
    assert mm.position == tg.position and mm.lifts == tg.lifts
    m = mirror_graph(tg)
    assert is_embedded(m)
    for walk in simple_cycles(tg.graph)[:20]:
        assert cycle_class(m, walk) == mirror(cycle_class(tg, walk))


@settings(max_examples=30, deadline=None)
@given(classes, classes, st.data())
def test_cycle_classes_primitive(c1, c2, data):
    assume(0 < intersection_count(c1, c2) <= 6)
    tg = arrangement([CurveSpec(HomologyClass(*c1)), CurveSpec(HomologyClass(*c2))])
    cycles = simple_cycles(tg.graph, cap=None)
    walk = data.draw(st.sampled_from(cycles))
    assert cycle_class(tg, walk).divisor in (0, 1)


def test_crossing_detector_sees_a_crossing():
    tg = torus_graph(
        {0: (Fraction(1, 4), Fraction(1, 2)), 1: (Fraction(3, 4), Fraction(1, 2)),
         2: (Fraction(1, 2), Fraction(1, 4)), 3: (Fraction(1, 2), Fraction(3, 4))},
        [("h", 0, 1, None, None), ("v", 2, 3, None, None)],
    )
    assert crossing_violations(tg) and not is_embedded(tg)


def test_subdivision_keeps_classes():
    tg = arrangement([CurveSpec(HomologyClass(1, 2)), CurveSpec(HomologyClass(1, -1))])
    sub = subdivide_edges(tg, 3)
    assert sub.graph.num_edges() == 3 * tg.graph.num_edges()
    census = knot_link_census(sub, cap=None)
    assert {c for c in census.knots} == {c for c in knot_link_census(tg, cap=None).knots}


# -- corner path and arrangement reduction -----------------------------------


@pytest.mark.parametrize("p,q,r,s", [(2, 3, 1, 1), (2, 3, 2, 5), (3, 4, 2, 3), (3, 5, 1, 2), (2, 5, 4, 1), (3, 7, 5, 2)])
def test_corner_path_and_reduction(p, q, r, s):
    tg = corner_arrangement(p, q, r, s)
    path = find_corner_path(tg)
    assert check_corner_path(tg, path)
    red = reduce_arrangement_to_S(tg, path)
    assert red.replay(tg) == red.graph
    assert is_isomorphic(red.graph, build_S((p, q))) is not None


def test_tampered_corner_path_rejected():
    tg = corner_arrangement(3, 4, 2, 3)
    path = find_corner_path(tg)
    bad = type(path)(path.anchor, path.edges[:-1], path.vertices[:-1], (path.signs or [1] * len(path.edges))[:-1])
    assert not check_corner_path(tg, bad)


def test_arrangement_graph_is_well_connected():
    tg = arrangement([CurveSpec(HomologyClass(2, 3)), CurveSpec(HomologyClass(2, -5))])
    assert connectivity(tg.graph) >= 3
    assert tg.graph.num_vertices() == 16
