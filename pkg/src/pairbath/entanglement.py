"""Entanglement measures and the first-order generation witness.

The numerical concurrence is computed through singular values of
sqrt(rho) sqrt(rho_tilde), which stays accurate at the rank-deficient
states the dynamics actually produces; the eigenvalue route loses half the
working digits there.  The closed-form evaluator mirrors the asymptotic
formula for baths with two equal smaller rates and is written so that the
singlet input returns exactly 1.0.
"""

from dataclasses import dataclass

import numpy as np

from .pauli_algebra import SIGMA

_YY = np.kron(SIGMA[1], SIGMA[1]).real  # sigma_y x sigma_y is real


def partial_transpose(mat):
    """Transpose on the second factor; returns (matrix, smallest eigenvalue).

    A negative smallest eigenvalue certifies entanglement; for two qubits the
    converse holds as well.
    """
    mat = np.asarray(mat, dtype=complex)
    pt = mat.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    return pt, float(np.linalg.eigvalsh(pt).min())


def _psd_sqrt(mat, floor=-1e-8):
    w, U = np.linalg.eigh(mat)
    if w.min() < floor:
        raise ValueError(f"matrix has eigenvalue {w.min():.3e}, not a state")
    return (U * np.sqrt(np.clip(w, 0.0, None))) @ U.conj().T


def concurrence(mat):
    """Two-qubit concurrence of a density matrix.

    Uses mu = singular values of sqrt(rho) sqrt(rho_spin_flipped); these are
    the canonical eigenvalue roots, but the singular-value route avoids the
    square-root-of-noisy-eigenvalue amplification near zero modes.
    """
    mat = np.asarray(mat, dtype=complex)
    tilde = _YY @ mat.conj() @ _YY
    prod = _psd_sqrt(mat) @ _psd_sqrt(tilde)
    mu = np.linalg.svd(prod, compute_uv=False)
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def concurrence_closed(M, R, tau, tol=1e-9):
    """Asymptotic concurrence over the commuting stationary family.

    Valid when the two smaller relaxation rates coincide, so that the family
    is parametrized by (M, R) alone.  Returns the gap Delta, the concurrence,
    and the threshold value of tau below which the asymptotic state is
    entangled.  The affine form of the numerator makes C exactly 1 at the
    singlet point tau = -3.
    """
    if not (-tol <= 2 * R <= 1 + tol):
        raise ValueError(f"need 0 <= 2R <= 1, got 2R = {2 * R}")
    if M * M > 2 * R + tol:
        raise ValueError(f"need M^2 <= 2R, got M^2 = {M * M}, 2R = {2 * R}")
    if not (-3 - tol <= tau <= 1 + tol):
        raise ValueError(f"correlation trace {tau} outside [-3, 1]")
    Delta = np.sqrt((1 - 2 * R) ** 2 + 4 * (2 * R - M * M))
    C = max(0.0, (2 * (2 * R - tau) - Delta * (3 + tau)) / (2 * (3 + 2 * R)))
    threshold = (4 * R - 3 * Delta) / (2 + Delta)
    return {"Delta": float(Delta), "C": float(C), "threshold": float(threshold)}


@dataclass(frozen=True)
class GenerationVerdict:
    """Outcome of the first-order entanglement-generation test."""

    generated: bool
    witness_eigenvalue_rate: float
    inconclusive: bool


def generation_test(phi, psi, block):
    """First-order test whether the bath entangles the product state phi x psi.

    The partially transposed pure product state has a three-dimensional
    kernel; the derivative of the partial transpose along the flow, restricted
    to that kernel, decides the question.  A negative smallest eigenvalue rate
    means a negativity develops immediately (generated); a strictly positive
    one means it does not, at this order; a vanishing rate leaves the test
    inconclusive.
    """
    from .generator import rhs_equal_blocks

    phi = np.asarray(phi, dtype=complex).reshape(2)
    psi = np.asarray(psi, dtype=complex).reshape(2)
    for name, v in (("phi", phi), ("psi", psi)):
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise ValueError(f"{name} is not normalized: |{name}| = {np.linalg.norm(v)}")

    vec = np.kron(phi, psi)
    rho = np.outer(vec, vec.conj())
    pt0, _ = partial_transpose(rho)
    w, U = np.linalg.eigh(pt0)
    kernel = U[:, w < 1e-12]

    dpt, _ = partial_transpose(rhs_equal_blocks(rho, block))
    restricted = kernel.conj().T @ dpt @ kernel
    rate = float(np.linalg.eigvalsh(restricted).min())

    inconclusive = abs(rate) <= 1e-12
    return GenerationVerdict(generated=rate < -1e-12,
                             witness_eigenvalue_rate=rate,
                             inconclusive=inconclusive)
