"""Acceptance suite: one test per criterion, PASS/FAIL lines printed at the end.

Pinned tolerances: the circulant sweep must finish in under 60 s; the
property suite uses 200 random cycles and 100 random graphs with fixed seeds.
"""

import itertools
import random
import sys
import time
from math import gcd

import networkx as nx
import pytest

from toral.chirality import (
    Case,
    Chiral,
    LadderChirality,
    TrivialEmbedding,
    build_hopf_ladder,
    classify_embedding,
    classify_hopf_ladder,
    cycles_with_bridge,
    grid_patch,
    corner_arrangement,
    mirror_link_arrangement,
    lemma2_k33,
    h3_extension,
    lemma3_minor,
    orientation_from_rungs,
    torus_knot_cycle,
    verdict_problems,
    K5viaLemma1,
    K33viaLemma2,
    K33viaLemma3,
)
from toral.circulant import build_S, reduce_to_K5, verify_certificate
from toral.documents import dumps, emit, loads, parse
from toral.graph import (
    K5,
    K33,
    MultiGraph,
    euler_nonplanar,
    has_minor,
    is_isomorphic,
    is_planar,
    verify_minor_model,
)
from toral.torus import (
    CurveSpec,
    HomologyClass,
    arrangement,
    check_corner_path,
    cycle_class,
    find_corner_path,
    intersection_count,
    is_embedded,
    linking_number,
    mirror,
    mirror_graph,
    reduce_arrangement_to_S,
    simple_cycles,
)

SWEEP_SECONDS = 60.0
RANDOM_CYCLES = 200
RANDOM_GRAPHS = 100
SEED = 20261016


def coprime_pairs(limit):
    return [(p, q) for p in range(2, limit) for q in range(p + 1, limit) if p + q <= limit and gcd(p, q) == 1]


@pytest.mark.criterion(1, "circulant sweep p+q <= 30: certificates verify, oracle finds K5, under 60 s")
def test_circulant_sweep():
    start = time.perf_counter()
    pairs = coprime_pairs(30)
    assert len(pairs) > 100
    for pq in pairs:
        cert = reduce_to_K5(pq)
        assert verify_certificate(cert), pq
        g = build_S(pq)
        model = has_minor(g, K5)
        assert model is not None and verify_minor_model(g, K5, model), pq
    elapsed = time.perf_counter() - start
    print(f"circulant sweep: {len(pairs)} pairs in {elapsed:.2f} s")
    assert elapsed < SWEEP_SECONDS


@pytest.mark.criterion(2, "S(3,11) reduction chain is (3,11) (2,7) (4,5) (2,3)")
def test_s3_11_chain():
    chain = [(s.p, s.q) for s in reduce_to_K5((3, 11)).chain()]
    assert chain == [(3, 11), (2, 7), (4, 5), (2, 3)]


@pytest.mark.criterion(3, "S(2,3) is K5 and S(p,q) is S(q,p) for p+q <= 14")
def test_circulant_isomorphisms():
    assert is_isomorphic(build_S((2, 3)), K5) is not None
    checked = 0
    for p in range(1, 14):
        for q in range(p + 1, 14):
            if p + q <= 14 and gcd(p, q) == 1:
                assert is_isomorphic(build_S((p, q)), build_S((q, p))) is not None, (p, q)
                checked += 1
    assert checked > 20


@pytest.mark.criterion(4, "arrangement laws for classes with entries <= 6, and T(2,3) with T(1,-1) is K5")
def test_arrangement_laws():
    classes = [HomologyClass(a, b) for a in range(0, 7) for b in range(-6, 7) if gcd(a, b) == 1 and (a > 0 or b > 0)]
    count = 0
    for c1, c2 in itertools.combinations(classes, 2):
        tg = arrangement([CurveSpec(c1), CurveSpec(c2)])
        n = tg.graph.num_vertices()
        assert n == abs(c1.a * c2.b - c1.b * c2.a), (c1, c2)
        assert tg.graph.num_edges() == 2 * n
        assert all(tg.graph.degree(v) == 4 for v in tg.vertices)
        count += 1
    assert count == 1128
    k5 = arrangement([CurveSpec(HomologyClass(2, 3)), CurveSpec(HomologyClass(1, -1))])
    assert k5.graph.num_vertices() == 5 and is_embedded(k5)
    assert is_isomorphic(k5.graph, K5) is not None


@pytest.mark.criterion(5, "K3,3 in T(kp,kq) with T(kp,-kq) for k in {2,3}, p,q <= 3; k=2,(1,2) by the recipe")
def test_k33_sweep():
    for k in (2, 3):
        for p in range(1, 4):
            for q in range(1, 4):
                if gcd(p, q) != 1:
                    continue
                cert = lemma2_k33(k, p, q)
                assert verify_minor_model(mirror_link_arrangement(k, p, q).graph, K33, cert.model), (k, p, q)
    cert = lemma2_k33(2, 1, 2)
    tg = mirror_link_arrangement(2, 1, 2)
    assert tg.graph.num_vertices() == 16
    assert cert.method == "recipe" and len(cert.branch) == 6 and len(cert.paths) == 9
    pairs = [ij for ij, _, _ in cert.paths]
    # p1 p3 p2 p4 around c1, the two parallel segments through p5 and p6, and p5 p6
    assert pairs == [(0, 2), (2, 1), (1, 3), (3, 0), (0, 4), (4, 1), (2, 5), (5, 3), (4, 5)]
    curve_of = {e: tg.curve[e] for e in tg.edges}
    c1 = {curve_of[e] for e in cert.paths[0][2] + cert.paths[1][2] + cert.paths[2][2] + cert.paths[3][2]}
    assert len(c1) == 1 and tg.curves[c1.pop()].spec_index == 1
    assert {tg.curves[curve_of[e]].spec_index for e in cert.paths[4][2] + cert.paths[6][2]} == {0}


@pytest.mark.criterion(6, "H_3 plus cross edge gives K3,3 after 1 deletion and 2 contractions; it is nonplanar")
def test_h3_extension():
    ext = h3_extension()
    res = lemma3_minor(ext)
    kinds = [op["op"] for op in res.ops]
    assert kinds.count("delete") == 1 and kinds.count("contract") == 2 and len(kinds) == 3
    assert res.ops[0]["edge"] == "3-1"
    assert is_isomorphic(res.minor, K33) is not None
    assert verify_minor_model(ext, K33, res.model)
    assert is_planar(ext) is False


@pytest.mark.criterion(7, "Hopf ladder table: achiral for n <= 2, chiral for 3..8; rung orientation only from n = 3")
def test_ladder_table():
    for n in range(9):
        expected = LadderChirality.ACHIRAL if n <= 2 else LadderChirality.CHIRAL
        assert classify_hopf_ladder(n) is expected
        orient = orientation_from_rungs(build_hopf_ladder(n))
        assert (orient is None) == (n <= 2)
        if orient is not None:
            assert orient.linking == 1


def _reverify(obstruction):
    """Re-run the oracle on the host the obstruction lives in."""
    if isinstance(obstruction, K5viaLemma1):
        host = corner_arrangement(obstruction.p, obstruction.q, obstruction.r, obstruction.s).graph
        target = K5
    elif isinstance(obstruction, K33viaLemma2):
        host, target = mirror_link_arrangement(obstruction.k, obstruction.p, obstruction.q).graph, K33
    else:
        assert isinstance(obstruction, K33viaLemma3)
        host, target = obstruction.extension, K33
    assert verify_minor_model(host, target, obstruction.model)
    found = has_minor(host, target, cap=None)
    assert found is not None and verify_minor_model(host, target, found)


@pytest.mark.criterion(8, "classifier end to end: knot, non-Hopf link and H_3 give verified obstructions; grid is trivial")
def test_classifier_end_to_end():
    cases = [
        (torus_knot_cycle((2, 3)), Case.KNOT),
        (cycles_with_bridge((1, 2)), Case.NON_HOPF_LINK),
        (build_hopf_ladder(3).torus, Case.HOPF_LADDER),
    ]
    for tg, case in cases:
        verdict = classify_embedding(tg)
        assert isinstance(verdict, Chiral) and verdict.case is case
        # through the document format and back, as the CLI would
        back = parse(loads(dumps(emit(verdict))))
        assert not verdict_problems(tg, back)
        _reverify(back.obstruction)
    assert isinstance(classify_embedding(grid_patch(3, 3)), TrivialEmbedding)


@pytest.mark.criterion(9, "corner path for four quadruples; reduction is isomorphic to S(p,q)")
def test_corner_paths():
    for p, q, r, s in [(2, 3, 1, 1), (2, 3, 2, 5), (3, 4, 2, 3), (3, 5, 1, 2)]:
        tg = corner_arrangement(p, q, r, s)
        path = find_corner_path(tg)
        assert check_corner_path(tg, path), (p, q, r, s)
        for v in path.vertices:
            x, y = tg.position[v]
            assert 0 < x < 1 and 0 < y < 1
        red = reduce_arrangement_to_S(tg, path)
        assert red.replay(tg) == red.graph
        assert is_isomorphic(red.graph, build_S((p, q))) is not None


def _random_cycles(rng, count):
    primitive = [(a, b) for a in range(0, 4) for b in range(-3, 4) if gcd(a, b) == 1 and (a > 0 or b > 0)]
    out = []
    while len(out) < count:
        c1, c2 = rng.sample(primitive, 2)
        if not 0 < intersection_count(c1, c2) <= 7:
            continue
        tg = arrangement([CurveSpec(HomologyClass(*c1)), CurveSpec(HomologyClass(*c2))])
        cycles = simple_cycles(tg.graph, cap=None)
        out += [(tg, w) for w in rng.sample(cycles, min(5, len(cycles)))]
    return out[:count]


def _random_graph(rng):
    n = rng.randint(1, 12)
    m = rng.randint(0, n * (n - 1) // 2)
    G = nx.gnm_random_graph(n, m, seed=rng.randrange(2**32))
    return G, MultiGraph(list(G.nodes), [(i, u, v) for i, (u, v) in enumerate(G.edges)])


@pytest.mark.criterion(10, "properties: mirror involution, primitive cycle classes, linking numbers, planarity vs Euler bound")
def test_property_suite():
    rng = random.Random(SEED)
    # mirror involution on classes and on embedded graphs
    for a in range(-5, 6):
        for b in range(-5, 6):
            assert mirror(mirror((a, b))) == HomologyClass(a, b)
    tg = arrangement([CurveSpec(HomologyClass(2, 3)), CurveSpec(HomologyClass(1, -2))])
    twice = mirror_graph(mirror_graph(tg))
    assert twice.position == tg.position and twice.lifts == tg.lifts

    samples = _random_cycles(rng, RANDOM_CYCLES)
    assert len(samples) == RANDOM_CYCLES
    for tg, walk in samples:
        assert cycle_class(tg, walk).divisor in (0, 1)

    assert linking_number((1, 1)) == 1
    assert linking_number((1, -1)) == -1
    assert linking_number((1, 0)) == 0

    nonplanar_by_euler = 0
    for _ in range(RANDOM_GRAPHS):
        G, g = _random_graph(rng)
        planar = is_planar(g)
        if euler_nonplanar(g):
            nonplanar_by_euler += 1
            assert not planar
        assert planar == nx.check_planarity(G)[0]
    assert nonplanar_by_euler > 0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
