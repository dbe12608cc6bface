"""Fixed two-qubit operator basis and the real-coefficient state representation.

Every density matrix of two qubits is written as

    rho = 1/4 [ 1x1 + sum_i r0i[i] (1 x sigma_i) + sum_i ri0[i] (sigma_i x 1)
                + sum_ij rij[i,j] (sigma_i x sigma_j) ]

with 15 real coefficients.  The collective operators

    Sigma_i = sigma_i x 1 + 1 x sigma_i
    S_ij    = sigma_i x sigma_j + sigma_j x sigma_i,   S = sum_i S_ii

close under matrix multiplication; `check_appendix_algebra` verifies the
four product identities by brute force.  P projects onto the antisymmetric
(singlet) state and commutes with every Sigma_i; tau = sum_i rij[i,i] is the
scalar 1 - 4 Tr[P rho], confined to [-3, 1] for valid states.

Operators are indexed 1..3 in formulas and 0..2 in storage; the mapping is
fixed here and imported everywhere else.
"""

import warnings
from dataclasses import dataclass

import numpy as np

SIGMA = [np.array([[0, 1], [1, 0]], dtype=complex),
         np.array([[0, -1j], [1j, 0]], dtype=complex),
         np.array([[1, 0], [0, -1]], dtype=complex)]
IDENT2 = np.eye(2, dtype=complex)
IDENT4 = np.eye(4, dtype=complex)


def levi_civita(i, j, k):
    """Totally antisymmetric symbol on storage indices 0..2; returns -1.0, 0.0 or 1.0."""
    return float((i - j) * (j - k) * (k - i)) / 2.0


BIG_SIGMA = [np.kron(s, IDENT2) + np.kron(IDENT2, s) for s in SIGMA]
S_OPS = [[np.kron(SIGMA[i], SIGMA[j]) + np.kron(SIGMA[j], SIGMA[i]) for j in range(3)]
         for i in range(3)]
S_TOTAL = S_OPS[0][0] + S_OPS[1][1] + S_OPS[2][2]
P_SINGLET = (IDENT4 - S_TOTAL / 2) / 4
Q_TRIPLET = IDENT4 - P_SINGLET

# tensor basis for conversions: TENSOR[a][b] = pauli_a x pauli_b with pauli_0 = 1
_PAULI_EXT = [IDENT2] + SIGMA
TENSOR = [[np.kron(_PAULI_EXT[a], _PAULI_EXT[b]) for b in range(4)] for a in range(4)]

_BASIS = {
    "sigma": SIGMA,
    "Sigma": BIG_SIGMA,
    "S_ops": S_OPS,
    "S_total": S_TOTAL,
    "P": P_SINGLET,
    "Q": Q_TRIPLET,
}


def build_basis():
    """Return the fixed operator basis as a dict.

    Keys: sigma (three 2x2 Pauli matrices), Sigma (collective one-qubit
    operators), S_ops (3x3 symmetric table of two-qubit symmetrized products),
    S_total, P (singlet projector), Q (its complement).  The arrays are shared
    module constants; treat them as read-only.
    """
    return _BASIS


@dataclass
class PauliCoefficients:
    """The 15 real expansion coefficients of a two-qubit operator.

    r0i[i] multiplies 1 x sigma_i (second qubit), ri0[i] multiplies
    sigma_i x 1 (first qubit), rij[i, j] multiplies sigma_i x sigma_j.
    """

    r0i: np.ndarray
    ri0: np.ndarray
    rij: np.ndarray

    def __post_init__(self):
        self.r0i = np.asarray(self.r0i, dtype=float).reshape(3)
        self.ri0 = np.asarray(self.ri0, dtype=float).reshape(3)
        self.rij = np.asarray(self.rij, dtype=float).reshape(3, 3)

    def copy(self):
        return PauliCoefficients(self.r0i.copy(), self.ri0.copy(), self.rij.copy())

    def as_vector(self):
        """Flatten to the canonical 15-vector order [r0i, ri0, rij.ravel()]."""
        return np.concatenate([self.r0i, self.ri0, self.rij.ravel()])

    @classmethod
    def from_vector(cls, v):
        v = np.asarray(v, dtype=float).reshape(15)
        return cls(v[:3], v[3:6], v[6:].reshape(3, 3))

    @classmethod
    def zero(cls):
        return cls(np.zeros(3), np.zeros(3), np.zeros((3, 3)))


def convert(state):
    """Convert between PauliCoefficients and the 4x4 density-matrix form.

    Coefficients -> matrix assembles the expansion verbatim.  Matrix ->
    coefficients projects with traces, taking real parts (the input is assumed
    Hermitian); a non-unit trace is reported as a warning, never renormalized.
    """
    if isinstance(state, PauliCoefficients):
        mat = IDENT4.copy()
        for i in range(3):
            mat += state.r0i[i] * TENSOR[0][i + 1] + state.ri0[i] * TENSOR[i + 1][0]
            for j in range(3):
                mat += state.rij[i, j] * TENSOR[i + 1][j + 1]
        return mat / 4
    mat = np.asarray(state, dtype=complex)
    tr = np.trace(mat).real
    if abs(tr - 1.0) > 1e-12:
        warnings.warn(f"matrix trace is {tr!r}, not 1; coefficients kept unscaled",
                      stacklevel=2)
    r0i = np.array([np.trace(mat @ TENSOR[0][i + 1]).real for i in range(3)])
    ri0 = np.array([np.trace(mat @ TENSOR[i + 1][0]).real for i in range(3)])
    rij = np.array([[np.trace(mat @ TENSOR[i + 1][j + 1]).real for j in range(3)]
                    for i in range(3)])
    return PauliCoefficients(r0i, ri0, rij)


def tau_of(state):
    """Trace of the correlation block; equals 1 - 4 Tr[P rho]."""
    if isinstance(state, PauliCoefficients):
        return float(np.trace(state.rij))
    mat = np.asarray(state, dtype=complex)
    return float(sum(np.trace(mat @ TENSOR[i + 1][i + 1]).real for i in range(3)))


def check_density_matrix(mat, herm_tol=1e-12, trace_tol=1e-12, psd_floor=-1e-10):
    """Raise ValueError unless mat is Hermitian, unit-trace and numerically PSD."""
    mat = np.asarray(mat, dtype=complex)
    herm_dev = np.abs(mat - mat.conj().T).max()
    if herm_dev > herm_tol:
        raise ValueError(f"not Hermitian: max deviation {herm_dev:.3e}")
    trace_dev = abs(np.trace(mat).real - 1.0)
    if trace_dev > trace_tol:
        raise ValueError(f"trace deviates from 1 by {trace_dev:.3e}")
    min_eig = np.linalg.eigvalsh(mat).min()
    if min_eig < psd_floor:
        raise ValueError(f"negative eigenvalue {min_eig:.3e}")
    return mat


def check_appendix_algebra():
    """Verify the four product identities of the collective-operator algebra.

    Each identity is checked for every index combination by comparing the
    explicit matrix product against the claimed linear combination; the
    largest entrywise deviation is returned.
    """
    one = IDENT4
    worst = 0.0

    # Sigma_i Sigma_j = 2 delta_ij 1 + i eps_ijk Sigma_k + S_ij
    for i in range(3):
        for j in range(3):
            lhs = BIG_SIGMA[i] @ BIG_SIGMA[j]
            rhs = 2 * (i == j) * one + S_OPS[i][j]
            for k in range(3):
                rhs = rhs + 1j * levi_civita(i, j, k) * BIG_SIGMA[k]
            worst = max(worst, np.abs(lhs - rhs).max())

    # S_ij Sigma_k = delta_ik Sigma_j + delta_jk Sigma_i
    #               + i eps_ikl S_lj + i eps_jkl S_il     (and conjugate order)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                cross = np.zeros((4, 4), dtype=complex)
                for l in range(3):
                    cross = cross + (levi_civita(i, k, l) * S_OPS[l][j]
                                     + levi_civita(j, k, l) * S_OPS[i][l])
                base = (i == k) * BIG_SIGMA[j] + (j == k) * BIG_SIGMA[i]
                lhs = S_OPS[i][j] @ BIG_SIGMA[k]
                worst = max(worst, np.abs(lhs - (base + 1j * cross)).max())
                lhs = BIG_SIGMA[k] @ S_OPS[i][j]
                worst = max(worst, np.abs(lhs - (base - 1j * cross)).max())

    # S_ij S_kl: scalar, Sigma, S and pairwise-S contributions
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    lhs = S_OPS[i][j] @ S_OPS[k][l]
                    rhs = 2 * ((i == k) * (j == l) + (i == l) * (j == k)) * one
                    for r in range(3):
                        coef = ((i == k) * levi_civita(j, l, r)
                                + (j == k) * levi_civita(i, l, r)
                                + (i == l) * levi_civita(j, k, r)
                                + (j == l) * levi_civita(i, k, r))
                        rhs = rhs + 1j * coef * BIG_SIGMA[r]
                    rhs = rhs - (2 * (i == j) * (k == l) - (i == k) * (j == l)
                                 - (i == l) * (j == k)) * S_TOTAL
                    rhs = rhs + 2 * ((i == j) * S_OPS[k][l] + (k == l) * S_OPS[i][j])
                    rhs = rhs - ((i == k) * S_OPS[j][l] + (i == l) * S_OPS[j][k]
                                 + (j == k) * S_OPS[i][l] + (j == l) * S_OPS[i][k])
                    worst = max(worst, np.abs(lhs - rhs).max())

    return worst
