import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frevival.oracle import (
    check_revival_shape,
    transition_entry,
    transition_matrix_character,
    transition_matrix_numeric,
    verify_witness,
)
from frevival.revival import decide


def test_identity_at_zero(z6xd3):
    p = z6xd3
    assert transition_entry(0, 0, 0.0, p.table, p.spec) == pytest.approx(1)
    assert abs(transition_entry(0, 5, 0.0, p.table, p.spec)) < 1e-12
    for H in (transition_matrix_character(0.0, p.table, p.spec), transition_matrix_numeric(0.0, p.graph)):
        assert np.abs(H.entries - np.eye(36)).max() < 1e-12
        assert check_revival_shape(H) is None


def test_worked_example_entry(z6xd3):
    p = z6xd3
    v = p.G.element([3, "e"])
    value = transition_entry(p.G.identity, v, 2 * math.pi / 3, p.table, p.spec)
    assert abs(value - 1j * math.sin(2 * math.pi / 3)) < 1e-12


def test_worked_example_shape(z6xd3):
    p = z6xd3
    H = transition_matrix_character(2 * math.pi / 3, p.table, p.spec)
    shape = check_revival_shape(H)
    assert shape is not None
    assert abs(shape.alpha + 0.5) < 1e-12
    assert abs(shape.beta - 0.8660254037844386j) < 1e-12
    a = p.G.element([3, "e"])
    assert shape.pairing == tuple(int(x) for x in p.G.mult[a])


def test_k2_closed_form(k2):
    for t in (0.3, 1.0, 2.5):
        expected = np.array([[math.cos(t), 1j * math.sin(t)], [1j * math.sin(t), math.cos(t)]])
        for H in (transition_matrix_character(t, k2.table, k2.spec), transition_matrix_numeric(t, k2.graph)):
            assert np.abs(H.entries - expected).max() < 1e-12


def test_z4_at_half_pi(z4):
    Hc = transition_matrix_character(math.pi / 2, z4.table, z4.spec)
    Hn = transition_matrix_numeric(math.pi / 2, z4.graph)
    expected = -np.eye(4)[[2, 3, 0, 1]]
    assert np.abs(Hc.entries - expected).max() < 1e-12
    assert np.abs(Hn.entries - expected).max() < 1e-12


def test_z4_at_quarter_pi_has_no_shape(z4):
    H = transition_matrix_character(math.pi / 4, z4.table, z4.spec)
    # every entry has modulus 1/2, so each row has four nonzero entries
    assert np.abs(np.abs(H.entries) - 0.5).max() < 1e-12
    assert check_revival_shape(H) is None


def test_group_property(z6xd3):
    p = z6xd3
    for t in (0.4, 1.7):
        for build in (
            lambda s: transition_matrix_character(s, p.table, p.spec),
            lambda s: transition_matrix_numeric(s, p.graph),
        ):
            prod = build(t).entries @ build(-t).entries
            assert np.abs(prod - np.eye(36)).max() < 1e-8


def test_verify_worked_witness(z6xd3):
    p = z6xd3
    w = decide(p.G, p.S, p.table, p.spec).witnesses[0]
    v = verify_witness(w, p.graph, p.table, p.spec)
    assert v.passed and v.pairing_ok
    assert max(v.cross_deviation, v.alpha_deviation, v.beta_deviation) < 1e-8


def test_verify_z4_witness(z4):
    w = decide(z4.G, z4.S, z4.table, z4.spec).witnesses[0]
    v = verify_witness(w, z4.graph, z4.table, z4.spec)
    assert v.passed and abs(w.alpha) < 1e-8


def test_perturbed_time_fails(z6xd3):
    p = z6xd3
    w = decide(p.G, p.S, p.table, p.spec).witnesses[0]
    bad = replace(w, t=w.t + 0.01)
    v = verify_witness(bad, p.graph, p.table, p.spec)
    assert not v.passed and not v.shape_found


def test_wrong_claimed_beta_fails(z6xd3):
    p = z6xd3
    w = decide(p.G, p.S, p.table, p.spec).witnesses[0]
    other = decide(p.G, p.S, p.table, p.spec).witnesses[1]
    # the k=2 witness at the k=1 time: same shape, conjugate beta
    v = verify_witness(other, p.graph, p.table, p.spec, t=w.t)
    assert not v.passed and v.beta_deviation > 1


def test_shape_rejects_unbalanced_matrix():
    from frevival.oracle import TransitionMatrix

    H = np.array([[0.6, 0.8j, 0, 0], [0.8j, 0.6, 0, 0], [0, 0, 0.6, 0.8j], [0, 0, 0.8j, 0.6]])
    s = check_revival_shape(TransitionMatrix(0.0, H, "test"))
    assert s is not None and s.pairing == (1, 0, 3, 2)
    H2 = H.copy()
    H2[2, 2] = H2[3, 3] = 0.61
    assert check_revival_shape(TransitionMatrix(0.0, H2, "test")) is None
    H3 = np.array([[0.6, 0.8], [0.8, 0.6]])  # alpha conj(beta) + conj(alpha) beta != 0
    assert check_revival_shape(TransitionMatrix(0.0, H3, "test")) is None


@given(t=st.floats(0, 2 * math.pi))
def test_structural_identities(z6xd3, t):
    p = z6xd3
    Hc = transition_matrix_character(t, p.table, p.spec)
    Hn = transition_matrix_numeric(t, p.graph)
    assert np.abs(Hc.entries - Hn.entries).max() < 1e-8
    for H in (Hc, Hn):
        assert H.unitarity_error() < 1e-8
        assert H.symmetry_error() < 1e-10
        d = np.diag(H.entries)
        assert np.abs(d - d[0]).max() < 1e-8
    assert Hc.translation_error(p.G) < 1e-12

