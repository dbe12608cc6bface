"""The dissipative generator in its equivalent forms, plus time integration.

Three representations of the same map are kept deliberately separate so they
can cross-check each other: the matrix form over the collective operators,
the 15 coupled component equations (the production path), and the diagonal
form through the square root of the bath block.  A fourth, fully general
form accepts an arbitrary 6x6 PSD coefficient matrix and serves as the
oracle for the equal-block specialization.
"""

from dataclasses import dataclass

import numpy as np

from .pauli_algebra import (BIG_SIGMA, IDENT2, PauliCoefficients, SIGMA,
                            convert, tau_of)

# cached products Sigma_i Sigma_j for the anticommutator terms
_SIG_PROD = [[BIG_SIGMA[i] @ BIG_SIGMA[j] for j in range(3)] for i in range(3)]

_F_OPS = [np.kron(s, IDENT2) for s in SIGMA] + [np.kron(IDENT2, s) for s in SIGMA]


class IntegrationAccuracyError(RuntimeError):
    """Positivity was violated beyond tolerance along a trajectory."""


def rhs_equal_blocks(state, block):
    """Generator in the collective-operator matrix form.

    state is a 4x4 density matrix; returns the (traceless, Hermitian) time
    derivative.
    """
    herm = block.herm
    out = np.zeros((4, 4), dtype=complex)
    for i in range(3):
        for j in range(3):
            sp = _SIG_PROD[i][j]
            out += herm[i, j] * (BIG_SIGMA[j] @ state @ BIG_SIGMA[i]
                                 - 0.5 * (sp @ state + state @ sp))
    return out


def rhs_components(state, block):
    """Generator acting on the 15 real coefficients directly.

    Works for any symmetric A and vector B, no principal frame required.
    Returns a PauliCoefficients increment.  The correlation-trace tau enters
    only through the inhomogeneity and the diagonal counterterm, which is why
    it is conserved by this dynamics.
    """
    A, B = block.A, block.B
    At = block.A_tr
    r0, r1, rij = state.r0i, state.ri0, state.rij
    tau = rij.trace()

    inhom = 2 * (2 + tau) * B
    d0 = -2 * At * r0 + 2 * (A @ r0 - rij @ B) + inhom
    d1 = -2 * At * r1 + 2 * (A @ r1 - rij.T @ B) + inhom

    Arij = A @ rij
    ArijT = A @ rij.T
    dij = (-4 * At * (rij + rij.T)
           + 2 * (Arij + ArijT.T)
           - 4 * A * tau
           + 4 * (ArijT + Arij.T)
           + 2 * (np.outer(B, r1) + np.outer(r0, B))
           + 4 * (np.outer(B, r0) + np.outer(r1, B)))
    dij += (4 * (At * tau - float(np.sum(A * rij.T)))
            - 2 * float(B @ (r0 + r1))) * np.eye(3)
    return PauliCoefficients(d0, d1, dij)


def rhs_general(state, C):
    """Generator for an arbitrary 6x6 Hermitian PSD coefficient matrix.

    The six operators are sigma_i x 1 (first three) and 1 x sigma_i (last
    three).  Used as an oracle: with all four sub-blocks equal this must
    reproduce rhs_equal_blocks.
    """
    C = np.asarray(C, dtype=complex)
    if np.abs(C - C.conj().T).max() > 1e-10:
        raise ValueError("coefficient matrix is not Hermitian")
    w = np.linalg.eigvalsh(C)
    if w.min() < -1e-10:
        raise ValueError(f"coefficient matrix has negative eigenvalue {w.min():.3e}")
    out = np.zeros((4, 4), dtype=complex)
    for a in range(6):
        Fa = _F_OPS[a]
        for b in range(6):
            if C[a, b] == 0:
                continue
            Fb = _F_OPS[b]
            fab = Fa @ Fb
            out += C[a, b] * (Fb @ state @ Fa
                              - 0.5 * (fab @ state + state @ fab))
    return out


def diagonal_form_check(block, state):
    """Max deviation of the diagonal (square-root) form from the matrix form.

    The block's Hermitian square root defines V_i = sum_j sqrt[i, j] Sigma_j;
    the single-sum Lindblad expression over the V_i must reproduce
    rhs_equal_blocks identically.
    """
    w, U = np.linalg.eigh(block.herm)
    sqrt = U @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ U.conj().T
    out = np.zeros((4, 4), dtype=complex)
    for i in range(3):
        V = sum(sqrt[i, j] * BIG_SIGMA[j] for j in range(3))
        Vd = V.conj().T
        VdV = Vd @ V
        out += V @ state @ Vd - 0.5 * (VdV @ state + state @ VdV)
    return float(np.abs(out - rhs_equal_blocks(state, block)).max())


@dataclass
class Trajectory:
    """Sampled solution of the master equation with per-sample observables."""

    times: np.ndarray
    states: list
    tau: np.ndarray
    trace_err: np.ndarray
    min_pt_eig: np.ndarray
    concurrence: np.ndarray


def rate_scale(block):
    """Characteristic rate used for default step and horizon choices."""
    lam_max = float(np.linalg.eigvalsh(block.A).max())
    return max(lam_max, float(np.linalg.norm(block.B)), 1.0)


def _rk4_step(x, dt, deriv):
    k1 = deriv(x)
    k2 = deriv(x + 0.5 * dt * k1)
    k3 = deriv(x + 0.5 * dt * k2)
    k4 = deriv(x + dt * k3)
    return x + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve(initial, block, t_end=None, dt=None, sample_every=10):
    """Integrate the component equations with fixed-step fourth-order steps.

    Defaults: dt = 0.01 / rate_scale, t_end = 50 / rate_scale, so the horizon
    and resolution follow the fastest rate in the block.  Samples are taken
    every `sample_every` steps plus the final time.  The trace is structurally
    conserved by the component representation; trace_err reports the
    reconstruction deviation as an integrator-health diagnostic.  A sampled
    state with an eigenvalue below -1e-7 aborts with a suggestion to reduce dt.
    """
    from .entanglement import concurrence as _concurrence
    from .entanglement import partial_transpose as _partial_transpose

    scale = rate_scale(block)
    if dt is None:
        dt = 0.01 / scale
    if t_end is None:
        t_end = 50.0 / scale
    if not (t_end > 0 and 0 < dt <= t_end):
        raise ValueError("need 0 < dt <= t_end")
    if sample_every < 1:
        raise ValueError("sample_every must be at least 1")

    def deriv(v):
        return rhs_components(PauliCoefficients.from_vector(v), block).as_vector()

    n_steps = int(round(t_end / dt))
    x = initial.as_vector()
    times, states = [], []
    taus, trace_errs, pt_eigs, concs = [], [], [], []

    def record(t, v):
        c = PauliCoefficients.from_vector(v)
        mat = convert(c)
        min_eig = float(np.linalg.eigvalsh(mat).min())
        if min_eig < -1e-7:
            raise IntegrationAccuracyError(
                f"state eigenvalue {min_eig:.3e} at t={t:.6g}; reduce dt")
        times.append(t)
        states.append(c)
        taus.append(tau_of(c))
        trace_errs.append(abs(np.trace(mat).real - 1.0))
        pt_eigs.append(_partial_transpose(mat)[1])
        concs.append(_concurrence(mat))

    record(0.0, x)
    for step in range(1, n_steps + 1):
        x = _rk4_step(x, dt, deriv)
        if step % sample_every == 0 or step == n_steps:
            record(step * dt, x)

    return Trajectory(times=np.array(times), states=states,
                      tau=np.array(taus), trace_err=np.array(trace_errs),
                      min_pt_eig=np.array(pt_eigs),
                      concurrence=np.array(concs))


def evolve_general(state, C, t_end, dt):
    """Fixed-step integration of the general-form generator on the matrix.

    Oracle-grade helper (dense 4x4 arithmetic per step); used to probe
    dynamics outside the equal-block family, e.g. conservation-law breaking.
    """
    n_steps = int(round(t_end / dt))
    rho = np.asarray(state, dtype=complex).copy()
    for _ in range(n_steps):
        rho = _rk4_step(rho, dt, lambda m: rhs_general(m, C))
    return rho
