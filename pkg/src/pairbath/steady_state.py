"""Stationary structure of the pair dynamics.

Two independent routes to the same objects are kept side by side: the
closed-form family (reference state, tau-parametrized equilibrium
components, asymptotic projector map), valid when the bath vector lies on a
principal axis of A, and a numerical null-space oracle over the 15 real
coefficients that works for any valid block.  Tests hold the two against
each other; neither is allowed to silently replace the other.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .bath import principal_frame
from .generator import rhs_components
from .pauli_algebra import (BIG_SIGMA, P_SINGLET, PauliCoefficients,
                            Q_TRIPLET, S_TOTAL, convert, tau_of)


class ClosedFormNotApplicable(ValueError):
    """The bath vector is not on a principal axis; use the numerical oracle."""


@dataclass(frozen=True)
class StationaryFamily:
    """Closed-form stationary data of a block: scalars M, N, R and the
    maximal-rank reference state, expressed in the input frame."""

    M: float
    N: float
    R: float
    rho0_hat: np.ndarray
    frame: object


@dataclass(frozen=True)
class EquilibriumState:
    """One member of the tau-parametrized equilibrium family."""

    tau: float
    components: dict
    state: np.ndarray


def _rotate_back(frame, r_aligned, rij_aligned):
    G = frame.aligned_rotation
    return G.T @ r_aligned, G.T @ rij_aligned @ G


def stationary_family(block):
    """Scalars M, N, R and the maximal-rank reference state.

    Requires the bath vector to lie on a principal axis of A (else the
    two smaller rates are not well defined and the closed form does not
    apply).  In the aligned frame the two axes transverse to B carry the
    rates lam1 >= lam2; the reference state is assembled there and rotated
    back to the input frame.  At the boundary b^2 = lam1 lam2 the family
    degenerates to reduced rank, which is reported as a warning.
    """
    frame = principal_frame(block)
    if not frame.closed_form_applicable:
        raise ClosedFormNotApplicable(
            "bath vector is not aligned with a principal axis of A")
    lam1, lam2, lam3 = frame.aligned_lam
    b = frame.aligned_b

    if b == 0.0:
        M = N = R = 0.0
    else:
        e2 = lam1 * lam2 + lam1 * lam3 + lam2 * lam3
        M = 2 * b / (lam1 + lam2)
        N = (lam1 - lam2) * b * b / (2 * (lam1 + lam2) * e2)
        R = (lam1 + lam2 + 4 * lam3) * b * b / (2 * (lam1 + lam2) * e2)
        if b * b > lam1 * lam2 * (1 - 1e-12):
            warnings.warn("bath vector saturates b^2 = lam1*lam2; "
                          "reference state is rank deficient")

    r_al = np.array([0.0, 0.0, M])
    rij_al = np.diag([-2 * N, 2 * N, 2 * R])
    r, rij = _rotate_back(frame, r_al, rij_al)
    rho0 = convert(PauliCoefficients(r, r, rij))
    return StationaryFamily(M=M, N=N, R=R, rho0_hat=rho0, frame=frame)


def equilibrium_components(tau, family):
    """Equilibrium state at correlation trace tau, from the closed form.

    Literal evaluation of the four nonvanishing components; the assembled
    state is symmetric under system exchange and reproduces the reference
    state at tau = 2R.
    """
    tau = float(tau)
    if not (-3.0 - 1e-12 <= tau <= 1.0 + 1e-12):
        raise ValueError(f"correlation trace {tau} outside [-3, 1]")
    M, N, R = family.M, family.N, family.R
    D = 3 + 2 * R
    rho_3 = (3 + tau) * M / D
    rho_11 = ((1 - 2 * N) * tau - 2 * (3 * N + R)) / (2 * D)
    rho_22 = ((1 + 2 * N) * tau + 2 * (3 * N - R)) / (2 * D)
    rho_33 = (4 * R + (1 + 2 * R) * tau) / (2 * D)

    r_al = np.array([0.0, 0.0, rho_3])
    rij_al = np.diag([2 * rho_11, 2 * rho_22, 2 * rho_33])
    r, rij = _rotate_back(family.frame, r_al, rij_al)
    state = convert(PauliCoefficients(r, r, rij))
    return EquilibriumState(tau=tau,
                            components={"rho_3": rho_3, "rho_11": rho_11,
                                        "rho_22": rho_22, "rho_33": rho_33},
                            state=state)


def asymptotic_state(initial, family):
    """Image of an initial state under the asymptotic projector map.

    The singlet and triplet weights of the initial state fix the mixture of
    the two projected reference-state sectors.  The result is cross-checked
    against the tau-parametrized component formulas; the two routes must
    agree to 1e-12, otherwise the family data is inconsistent.
    """
    rho_in = initial if isinstance(initial, np.ndarray) else convert(initial)
    rho0 = family.rho0_hat
    p_weight = float(np.trace(P_SINGLET @ rho_in).real)
    q_weight = float(np.trace(Q_TRIPLET @ rho_in).real)

    PrP = P_SINGLET @ rho0 @ P_SINGLET
    QrQ = Q_TRIPLET @ rho0 @ Q_TRIPLET
    rho_hat = (p_weight / np.trace(PrP).real) * PrP \
        + (q_weight / np.trace(QrQ).real) * QrQ

    tau = tau_of(rho_in)
    eq = equilibrium_components(tau, family)
    mismatch = float(np.abs(rho_hat - eq.state).max())
    if mismatch > 1e-12:
        raise RuntimeError(
            f"projector map and component formulas disagree by {mismatch:.3e}")
    return EquilibriumState(tau=eq.tau, components=eq.components, state=rho_hat)


def _affine_system(block):
    """15x15 matrix L and offset c0 with d(coeffs)/dt = L coeffs + c0."""
    zero = PauliCoefficients.zero()
    c0 = rhs_components(zero, block).as_vector()
    L = np.empty((15, 15))
    for k in range(15):
        e = np.zeros(15)
        e[k] = 1.0
        L[:, k] = rhs_components(PauliCoefficients.from_vector(e), block).as_vector() - c0
    return L, c0


def _min_eig(vec):
    return float(np.linalg.eigvalsh(convert(PauliCoefficients.from_vector(vec))).min())


def _line_search(vec, direction, lo, hi, iters=200):
    """Maximize the (concave) minimum eigenvalue along vec + t*direction."""
    for _ in range(iters):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if _min_eig(vec + m1 * direction) < _min_eig(vec + m2 * direction):
            lo = m1
        else:
            hi = m2
    t = 0.5 * (lo + hi)
    return vec + t * direction


def liouvillian_null_space(block, rank_tol=1e-10):
    """Numerical oracle for the stationary set of a block.

    Solves the affine system over the 15 real coefficients by singular-value
    decomposition (relative threshold `rank_tol`), returning the dimension of
    the solution set, an orthonormal basis of directions, and a member with
    all eigenvalues above 1e-8 located by maximizing the minimum eigenvalue
    over the set.  The full-rank member is None when the search fails, which
    is expected exactly at boundary blocks.
    """
    L, c0 = _affine_system(block)
    U, s, Vt = np.linalg.svd(L)
    cutoff = rank_tol * (s[0] if s[0] > 0 else 1.0)
    null_dirs = [Vt[k] for k in range(15) if s[k] <= cutoff]

    # minimum-norm particular solution of L v = -c0 through the same SVD
    inv_s = np.array([1.0 / x if x > cutoff else 0.0 for x in s])
    particular = Vt.T @ (inv_s * (U.T @ -c0))
    residual = float(np.abs(L @ particular + c0).max())
    if residual > 1e-8 * max(1.0, s[0]):
        raise RuntimeError(f"affine stationary system inconsistent "
                           f"(residual {residual:.3e}); invalid block?")

    member = particular
    if len(null_dirs) == 1:
        d = null_dirs[0]
        tau_d = float(d[6] + d[10] + d[14])
        if abs(tau_d) > 1e-8:
            # parametrize by tau and scan its physical range
            tau_p = tau_of(PauliCoefficients.from_vector(particular))
            lo, hi = (-3.0 - tau_p) / tau_d, (1.0 - tau_p) / tau_d
            member = _line_search(particular, d, min(lo, hi), max(lo, hi))
        else:
            member = _line_search(particular, d, -10.0, 10.0)
    elif len(null_dirs) > 1:
        for _ in range(4):
            for d in null_dirs:
                member = _line_search(member, d, -4.0, 4.0, iters=80)

    ok = _min_eig(member) > 1e-8
    return {"dimension": len(null_dirs),
            "basis": null_dirs,
            "full_rank_member": convert(PauliCoefficients.from_vector(member)) if ok else None}


def commutant_check(block):
    """Verify that the total-spin correlation operator commutes with the
    diagonal-form operators V_i of the block (hence lies in the commutant
    characterizing the stationary structure)."""
    w, U = np.linalg.eigh(block.herm)
    sqrt = U @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ U.conj().T
    residuals = []
    for i in range(3):
        V = sum(sqrt[i, j] * BIG_SIGMA[j] for j in range(3))
        for X in (V, V.conj().T):
            residuals.append(float(np.abs(S_TOTAL @ X - X @ S_TOTAL).max()))
    return {"contains_S": all(r < 1e-12 for r in residuals),
            "residuals": residuals}
