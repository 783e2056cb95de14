import dataclasses
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from toral.circulant import (
    CirculantSpec,
    ReductionCertificate,
    build_S,
    cayley_check,
    certificate_model,
    certificate_problems,
    chord_tour,
    interleaving_counts,
    invert_relabel,
    minor_step,
    reduce_to_K5,
    verify_certificate,
)
from toral.graph import K5, edge_bijection, is_isomorphic, verify_minor_model

coprime_pairs = (
    st.tuples(st.integers(2, 25), st.integers(3, 25))
    .filter(lambda t: t[0] < t[1] and gcd(*t) == 1)
)


def test_spec_validation():
    with pytest.raises(ValueError):
        CirculantSpec(3, 12)
    assert CirculantSpec(11, 3).normalized() == CirculantSpec(3, 11)
    assert str(CirculantSpec(3, 11)) == "S(3,11)"


def test_build_counts_and_cayley():
    g = build_S((3, 11))
    assert g.num_vertices() == 14 and g.num_edges() == 28
    assert all(g.degree(v) == 4 for v in g.vertices)
    assert cayley_check((3, 11))


def test_small_cases():
    assert is_isomorphic(build_S((2, 3)), K5) is not None
    assert is_isomorphic(build_S((3, 2)), build_S((2, 3))) is not None


def test_regression_chain():
    cert = reduce_to_K5((3, 11))
    assert [(s.p, s.q) for s in cert.chain()] == [(3, 11), (2, 7), (4, 5), (2, 3)]
    assert [s.kind for s in cert.steps] == ["minor", "invert", "minor"]
    assert verify_certificate(cert)


def test_skip_is_recorded():
    cert = reduce_to_K5((2, 5))
    assert [s.kind for s in cert.steps] == ["skip", "invert", "minor"]
    assert [(s.p, s.q) for s in cert.chain()] == [(2, 5), (3, 4), (2, 3)]


def test_k5_itself():
    cert = reduce_to_K5((2, 3))
    assert cert.steps == () and verify_certificate(cert)


def test_minor_step_kept_chords():
    step = minor_step((3, 11))
    assert len(step.kept_chords) == 2 * (14 // 3) + 1
    assert chord_tour((3, 11))[:4] == [0, 3, 6, 9]
    assert set(interleaving_counts(step).values()) == {2}


@settings(max_examples=50, deadline=None)
@given(coprime_pairs)
def test_every_certificate_verifies(pq):
    cert = reduce_to_K5(pq)
    assert verify_certificate(cert)
    assert verify_minor_model(build_S(pq), K5, certificate_model(cert))
    assert cert.chain()[-1] == CirculantSpec(2, 3)


@settings(max_examples=50, deadline=None)
@given(coprime_pairs)
def test_double_inversion_is_identity(pq):
    spec = CirculantSpec(*pq)
    once = invert_relabel(spec)
    twice = invert_relabel(once.result)
    assert twice.result == spec
    assert edge_bijection(build_S(spec), build_S(once.result), dict(once.vertex_map)) is not None


@settings(max_examples=30, deadline=None)
@given(coprime_pairs)
def test_interleaving_of_kept_chords(pq):
    assume(pq[0] > 2)
    assert set(interleaving_counts(minor_step(pq)).values()) == {2}


# -- tamper detection ----------------------------------------------------------


def test_tampered_deleted_chord():
    cert = reduce_to_K5((3, 11))
    step = cert.steps[0]
    kept = list(step.kept_chords)
    bad_deleted = tuple(step.deleted_chords[1:]) + (kept[0],)
    bad = dataclasses.replace(step, deleted_chords=bad_deleted)
    forged = ReductionCertificate(cert.initial, (bad,) + cert.steps[1:], cert.final_isomorphism)
    assert certificate_problems(forged)


def test_reordered_steps():
    cert = reduce_to_K5((3, 11))
    s = cert.steps
    forged = ReductionCertificate(cert.initial, (s[1], s[0], s[2]), cert.final_isomorphism)
    assert not verify_certificate(forged)


def test_bad_final_map():
    cert = reduce_to_K5((3, 11))
    forged = ReductionCertificate(cert.initial, cert.steps, ((0, 0), (1, 0), (2, 2), (3, 3), (4, 4)))
    assert not verify_certificate(forged)


def test_dropped_step():
    cert = reduce_to_K5((3, 11))
    forged = ReductionCertificate(cert.initial, cert.steps[:-1], cert.final_isomorphism)
    assert any("not S(2,3)" in p for p in certificate_problems(forged))


def test_invalid_inputs():
    with pytest.raises(ValueError):
        reduce_to_K5((1, 4))
    with pytest.raises(ValueError):
        reduce_to_K5((4, 6))
