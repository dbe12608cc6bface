"""Operator basis, coefficient representation, and the product identities."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pairbath.pauli_algebra import (IDENT4, P_SINGLET, PauliCoefficients,
                                    Q_TRIPLET, S_TOTAL, build_basis,
                                    check_appendix_algebra,
                                    check_density_matrix, convert,
                                    levi_civita, tau_of)

from conftest import COLLECTIVE, PAULI, random_state

SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def test_basis_contents():
    basis = build_basis()
    assert set(basis) == {"sigma", "Sigma", "S_ops", "S_total", "P", "Q"}
    for k, s in enumerate(basis["sigma"]):
        assert np.allclose(s, PAULI[k])
        assert np.allclose(s @ s, np.eye(2))
    for k in range(3):
        assert np.allclose(basis["Sigma"][k], COLLECTIVE[k])
    for i in range(3):
        for j in range(3):
            expect = (np.kron(PAULI[i], PAULI[j]) + np.kron(PAULI[j], PAULI[i]))
            assert np.allclose(basis["S_ops"][i][j], expect)
            assert np.allclose(basis["S_ops"][i][j], basis["S_ops"][j][i])
    assert np.allclose(basis["S_total"],
                       sum(basis["S_ops"][i][i] for i in range(3)))


def test_projectors():
    assert np.allclose(P_SINGLET @ P_SINGLET, P_SINGLET)
    assert np.allclose(Q_TRIPLET @ Q_TRIPLET, Q_TRIPLET)
    assert np.allclose(P_SINGLET + Q_TRIPLET, IDENT4)
    assert np.allclose(P_SINGLET @ Q_TRIPLET, 0)
    assert np.isclose(np.trace(P_SINGLET).real, 1.0)
    # P is the projector onto the antisymmetric pure state
    assert np.allclose(P_SINGLET, np.outer(SINGLET, SINGLET.conj()))
    # and commutes with every collective operator
    for S in COLLECTIVE:
        assert np.abs(P_SINGLET @ S - S @ P_SINGLET).max() < 1e-15


def test_levi_civita_table():
    for i in range(3):
        for j in range(3):
            for k in range(3):
                if {i, j, k} != {0, 1, 2}:
                    assert levi_civita(i, j, k) == 0.0
    assert levi_civita(0, 1, 2) == 1.0
    assert levi_civita(1, 2, 0) == 1.0
    assert levi_civita(2, 0, 1) == 1.0
    assert levi_civita(1, 0, 2) == -1.0
    assert levi_civita(0, 2, 1) == -1.0
    assert levi_civita(2, 1, 0) == -1.0


def test_appendix_algebra_residual():
    assert check_appendix_algebra() < 1e-13


def test_one_identity_instance_by_hand():
    # Sigma_1 Sigma_2 = i Sigma_3 + S_12 (the delta term vanishes off-diagonal)
    lhs = COLLECTIVE[0] @ COLLECTIVE[1]
    s12 = np.kron(PAULI[0], PAULI[1]) + np.kron(PAULI[1], PAULI[0])
    assert np.abs(lhs - (1j * COLLECTIVE[2] + s12)).max() < 1e-15


def test_convert_round_trip_matrix(rng):
    for _ in range(20):
        rho = random_state(rng)
        back = convert(convert(rho))
        assert np.abs(back - rho).max() < 1e-14


def test_convert_round_trip_coefficients(rng):
    v = rng.uniform(-0.3, 0.3, 15)
    c = PauliCoefficients.from_vector(v)
    back = convert(convert(c))
    assert np.abs(back.as_vector() - v).max() < 1e-14


def test_convert_warns_on_bad_trace():
    with pytest.warns(UserWarning, match="trace"):
        convert(np.eye(4, dtype=complex))


def test_convert_never_renormalizes():
    with pytest.warns(UserWarning):
        c = convert(np.eye(4, dtype=complex) / 8)
    # coefficients of a half-weight maximally mixed state are still zero
    assert np.abs(c.as_vector()).max() < 1e-15


def test_tau_values(rng):
    assert np.isclose(tau_of(P_SINGLET), -3.0)
    assert np.isclose(tau_of(np.eye(4, dtype=complex) / 4), 0.0)
    assert np.isclose(tau_of(Q_TRIPLET / 3), 1.0)
    rho = random_state(rng)
    # tau = 1 - 4 Tr[P rho] and both representations agree
    assert np.isclose(tau_of(rho), 1 - 4 * np.trace(P_SINGLET @ rho).real)
    assert np.isclose(tau_of(rho), tau_of(convert(rho)))


def test_tau_range_on_states(rng):
    for _ in range(200):
        tau = tau_of(random_state(rng, rank=int(rng.integers(1, 5))))
        assert -3.0 - 1e-12 <= tau <= 1.0 + 1e-12


def test_check_density_matrix():
    check_density_matrix(np.eye(4, dtype=complex) / 4)
    with pytest.raises(ValueError, match="Hermitian"):
        check_density_matrix(np.eye(4) / 4 + 1e-6 * np.array(
            [[0, 1j, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]))
    with pytest.raises(ValueError, match="trace"):
        check_density_matrix(np.eye(4, dtype=complex) / 2)
    with pytest.raises(ValueError, match="eigenvalue"):
        check_density_matrix(np.diag([1.5, -0.5, 0, 0]).astype(complex))


def test_vector_round_trip():
    v = np.arange(15.0)
    c = PauliCoefficients.from_vector(v)
    assert np.array_equal(c.as_vector(), v)
    assert np.array_equal(c.r0i, v[:3])
    assert np.array_equal(c.ri0, v[3:6])
    assert np.array_equal(c.rij, v[6:].reshape(3, 3))
    z = PauliCoefficients.zero()
    assert np.abs(z.as_vector()).max() == 0.0
    cp = c.copy()
    cp.rij[0, 0] = -1
    assert c.rij[0, 0] == 6.0


@settings(max_examples=50, deadline=None)
@given(arrays(float, 15, elements=st.floats(-0.25, 0.25)))
def test_convert_always_hermitian_unit_trace(v):
    mat = convert(PauliCoefficients.from_vector(v))
    assert np.abs(mat - mat.conj().T).max() < 1e-14
    assert abs(np.trace(mat).real - 1.0) < 1e-14


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_levi_civita_antisymmetry(i, j, k):
    assert levi_civita(i, j, k) == -levi_civita(j, i, k)
    assert levi_civita(i, j, k) == -levi_civita(i, k, j)
    assert levi_civita(i, j, k) == levi_civita(j, k, i)
