import dataclasses

import pytest

from toral.chirality import (
    EXTENSION_OPS,
    AchiralCatalogued,
    Case,
    Chiral,
    LadderChirality,
    NonplanarInput,
    TrivialEmbedding,
    Unknown,
    build_hopf_ladder,
    classify_embedding,
    classify_hopf_ladder,
    cycles_with_bridge,
    find_hopf_ladder_subgraph,
    grid_patch,
    lemma1_k5,
    mirror_link_arrangement,
    lemma2_k33,
    h3_certificate,
    h3_extension,
    lemma3_minor,
    h3_extension_torus,
    obstruction_problems,
    orientation_from_rungs,
    torus_knot_cycle,
    verdict_problems,
    verify_obstruction,
    witness_problems,
)
from toral.graph import K33, GraphError, MinorModel, connectivity, is_planar, is_simple, verify_minor_model
from toral.torus import CurveSpec, HomologyClass, arrangement, is_embedded, mirror_graph


# -- ladders -------------------------------------------------------------------


@pytest.mark.parametrize("n", range(0, 7))
def test_ladder_shape(n):
    h = build_hopf_ladder(n)
    assert is_embedded(h.torus)
    m = max(n, 1)
    assert h.graph.num_vertices() == 2 * m
    assert h.graph.num_edges() == 2 * m + n
    if n >= 3:
        assert is_simple(h.graph) and connectivity(h.graph) == 3


def test_ladder_table():
    assert [classify_hopf_ladder(n) for n in range(9)] == [LadderChirality.ACHIRAL] * 3 + [LadderChirality.CHIRAL] * 6
    with pytest.raises(ValueError):
        classify_hopf_ladder(-1)


@pytest.mark.parametrize("n", range(0, 9))
def test_rung_orientation(n):
    o = orientation_from_rungs(build_hopf_ladder(n))
    if n <= 2:
        assert o is None
    else:
        assert o.linking == 1
        assert orientation_from_rungs(build_hopf_ladder(n, mirrored=True)).linking == -1


# -- K5 and K3,3 obstruction certificates --------------------------------------


@pytest.mark.parametrize("pqrs", [(2, 3, 1, 1), (2, 3, 2, 3), (2, 5, 1, 2), (3, 4, 3, 1)])
def test_k5_certificate(pqrs):
    cert = lemma1_k5(*pqrs)
    assert verify_obstruction(cert)


def test_k5_certificate_tampered():
    cert = lemma1_k5(2, 3, 2, 3)
    sets = dict(cert.model.branch_sets)
    a, b = list(sets)[:2]
    sets[a], sets[b] = sets[b] | sets[a], frozenset()
    forged = dataclasses.replace(cert, model=MinorModel(sets, cert.model.edge_assignment))
    assert obstruction_problems(forged)


@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("pq", [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)])
def test_k33_certificate(k, pq):
    cert = lemma2_k33(k, *pq)
    assert cert.method == "recipe"
    assert verify_minor_model(mirror_link_arrangement(k, *pq).graph, K33, cert.model)
    assert verify_obstruction(cert)


def test_k33_recipe_order_along_c1():
    cert = lemma2_k33(2, 1, 2)
    p1, p2, p3, p4, p5, p6 = cert.branch
    # the four c1 arcs run p1 -> p3 -> p2 -> p4 -> p1
    c1_pairs = [ij for ij, _, _ in cert.paths][:4]
    assert c1_pairs == [(0, 2), (2, 1), (1, 3), (3, 0)]
    assert len(set(cert.branch)) == 6


def test_k33_certificate_tampered():
    cert = lemma2_k33(2, 1, 2)
    (ij, verts, edges), *rest = cert.paths
    forged = dataclasses.replace(cert, paths=((ij, verts, edges[:-1]), *rest))
    assert obstruction_problems(forged)


def test_k33_input_checks():
    with pytest.raises(ValueError):
        lemma2_k33(1, 1, 2)
    with pytest.raises(ValueError):
        lemma2_k33(2, 0, 1)


def test_h3_extension():
    ext = h3_extension()
    res = lemma3_minor(ext)
    assert [op["op"] for op in res.ops] == ["delete", "contract", "contract"]
    assert res.minor.num_vertices() == 6 and res.minor.num_edges() == 9
    assert not is_planar(ext)
    assert verify_obstruction(h3_certificate())


def test_h3_extension_variants():
    assert not is_planar(h3_extension(symmetric=True))
    tg = h3_extension_torus()
    assert is_embedded(tg) and tg.graph == h3_extension()
    assert is_embedded(h3_extension_torus(symmetric=True))


def test_h3_extension_wrong_ops():
    cert = h3_certificate()
    forged = dataclasses.replace(cert, ops=EXTENSION_OPS[1:])
    assert obstruction_problems(forged)
    with pytest.raises(GraphError):
        lemma3_minor(build_hopf_ladder(3).graph)


# -- classifier ----------------------------------------------------------------


def test_knot_case():
    tg = torus_knot_cycle((2, 3))
    v = classify_embedding(tg)
    assert isinstance(v, Chiral) and v.case is Case.KNOT
    assert v.witness.classes == (HomologyClass(2, 3),)
    assert not verdict_problems(tg, v)


def test_link_case():
    tg = cycles_with_bridge((1, 2))
    v = classify_embedding(tg)
    assert isinstance(v, Chiral) and v.case is Case.NON_HOPF_LINK
    assert not verdict_problems(tg, v)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_ladder_case(n):
    h = build_hopf_ladder(n)
    v = classify_embedding(h.torus)
    assert isinstance(v, Chiral) and v.case is Case.HOPF_LADDER
    assert not verdict_problems(h.torus, v)
    assert not witness_problems(h.torus, v.witness.ladder)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_small_ladders_are_catalogued(n):
    assert isinstance(classify_embedding(build_hopf_ladder(n).torus), AchiralCatalogued)


def test_grid_is_trivial():
    assert isinstance(classify_embedding(grid_patch(3, 3)), TrivialEmbedding)


def test_single_essential_cycle_is_unknown():
    tg = arrangement([CurveSpec(HomologyClass(1, 0))], subdivide=3)
    assert isinstance(classify_embedding(tg), Unknown)


@pytest.mark.parametrize(
    "tg", [torus_knot_cycle((2, 3)), cycles_with_bridge((1, 2)), build_hopf_ladder(3).torus, grid_patch(2, 3)]
)
def test_mirror_gives_same_verdict(tg):
    a, b = classify_embedding(tg), classify_embedding(mirror_graph(tg))
    assert a.tag == b.tag and getattr(a, "case", None) == getattr(b, "case", None)


def test_nonplanar_rejected():
    with pytest.raises(NonplanarInput):
        classify_embedding(h3_extension_torus())


def test_forged_witness_rejected():
    tg = build_hopf_ladder(3).torus
    v = classify_embedding(tg)
    w = v.witness.ladder
    forged = dataclasses.replace(w, paths=w.paths[:2], ends=w.ends[:2])
    assert witness_problems(tg, forged)
    assert find_hopf_ladder_subgraph(build_hopf_ladder(2).torus) is None
