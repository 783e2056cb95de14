from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toral.chirality import (
    build_hopf_ladder,
    classify_embedding,
    cycles_with_bridge,
    grid_patch,
    lemma1_k5,
    lemma2_k33,
    h3_certificate,
    torus_knot_cycle,
    verify_obstruction,
)
from toral.circulant import build_S, reduce_to_K5, verify_certificate
from toral.documents import (
    SCHEMA_VERSION,
    DocumentError,
    dumps,
    emit,
    emit_model,
    loads,
    parse,
    rat,
    unrat,
    validate,
)
from toral.graph import K5, has_minor
from toral.torus import CurveSpec, HomologyClass, arrangement


def roundtrip(obj):
    doc = emit(obj)
    back = parse(loads(dumps(doc)))
    assert emit(back) == doc
    return back


@given(st.fractions())
def test_rationals(x):
    assert unrat(rat(x)) == x
    assert unrat(3) == 3 and unrat("5") == 5


def test_rational_format():
    assert rat(Fraction(3, 4)) == "3/4"
    assert rat(Fraction(2)) == "2/1"


@pytest.mark.parametrize(
    "obj",
    [
        build_S((3, 11)),
        arrangement([CurveSpec(HomologyClass(2, 3)), CurveSpec(HomologyClass(2, -5))]),
        build_hopf_ladder(3).torus,
        grid_patch(),
    ],
)
def test_graph_roundtrip(obj):
    roundtrip(obj)


def test_certificate_roundtrip():
    back = roundtrip(reduce_to_K5((3, 11)))
    assert verify_certificate(back)


@pytest.mark.parametrize("make", [lambda: lemma1_k5(2, 3, 2, 5), lambda: lemma2_k33(2, 1, 2), h3_certificate])
def test_obstruction_roundtrip(make):
    assert verify_obstruction(roundtrip(make()))


@pytest.mark.parametrize("tg", [torus_knot_cycle(), cycles_with_bridge(), build_hopf_ladder(3).torus, grid_patch()])
def test_verdict_roundtrip(tg):
    back = roundtrip(classify_embedding(tg))
    assert back.tag == classify_embedding(tg).tag


def test_model_document():
    g = build_S((3, 11))
    m = has_minor(g, K5)
    target, back = parse(loads(dumps(emit_model("k5", m))))
    assert target == "k5" and back == m


def test_version_refused():
    doc = emit(build_S((2, 3)))
    doc["schema_version"] = SCHEMA_VERSION + 1
    with pytest.raises(DocumentError, match="version"):
        validate(doc)


def test_truncated_file():
    text = dumps(emit(reduce_to_K5((3, 11))))
    with pytest.raises(DocumentError):
        loads(text[: len(text) // 2])


def test_schema_violation():
    doc = emit(build_S((2, 3)))
    doc["edges"] = "nope"
    with pytest.raises(DocumentError):
        parse(doc)
    with pytest.raises(DocumentError):
        parse({"schema_version": SCHEMA_VERSION, "kind": "spaceship"})


def test_output_is_canonical():
    a = dumps(emit(reduce_to_K5((5, 8))))
    b = dumps(emit(reduce_to_K5((5, 8))))
    assert a == b and a.endswith("\n")
