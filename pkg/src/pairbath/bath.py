"""Bath specification: validation, full coefficient matrix, principal frame.

The bath enters the dynamics through a Hermitian 3x3 matrix split into a real
symmetric part A and a real vector B,

    herm[i, j] = A[i, j] + i sum_k eps_ijk B[k],

which must be positive semi-definite for the evolution to be completely
positive.  The closed-form stationary results need the frame in which A is
diagonal and B points along the third axis; `principal_frame` constructs it
when the geometry allows (B an eigenvector of A, possibly after exploiting
eigenvalue degeneracies).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .pauli_algebra import levi_civita


class BathValidityError(ValueError):
    """The (A, B) data does not define a completely positive generator."""


def hermitian_block(A, B):
    """Assemble the Hermitian combination of a symmetric A and a vector B."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    imag = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                imag[i, j] += levi_civita(i, j, k) * B[k]
    return A + 1j * imag


@dataclass(frozen=True)
class KossakowskiBlock:
    """Validated bath data: symmetric A, vector B, and derived quantities.

    herm is the Hermitian combination above, eigs its eigenvalues (ascending),
    A_tr the trace of A.  boundary flags a singular herm: the bath sits on the
    positivity boundary (in the aligned frame, B^2 = lambda_1 lambda_2, or a
    vanishing eigenvalue of A).
    """

    A: np.ndarray
    B: np.ndarray
    herm: np.ndarray
    eigs: np.ndarray
    A_tr: float
    boundary: bool


def make_bath(A, B):
    """Validate (A, B) and return a KossakowskiBlock.

    A is symmetrized (with a warning) when its asymmetry is within 1e-12 and
    rejected beyond that; the Hermitian combination must be PSD within -1e-12,
    otherwise the offending eigenvalue is reported.
    """
    A = np.asarray(A, dtype=float).reshape(3, 3)
    B = np.asarray(B, dtype=float).reshape(3)
    asym = np.abs(A - A.T).max()
    if asym > 1e-12:
        raise BathValidityError(f"A is not symmetric: max asymmetry {asym:.3e}")
    if asym > 0.0:
        warnings.warn(f"symmetrizing A (asymmetry {asym:.3e})", stacklevel=2)
        A = (A + A.T) / 2
    herm = hermitian_block(A, B)
    eigs = np.linalg.eigvalsh(herm)
    if eigs[0] < -1e-12:
        raise BathValidityError(
            f"bath matrix has negative eigenvalue {eigs[0]:.6e}; "
            "complete positivity fails")
    scale = max(1.0, float(eigs[-1]))
    boundary = bool(eigs[0] <= 1e-12 * scale)
    return KossakowskiBlock(A=A, B=B, herm=herm, eigs=eigs,
                            A_tr=float(np.trace(A)), boundary=boundary)


def assemble_full_C(block):
    """Expand the bath block to the full 6x6 coefficient matrix.

    All four 3x3 sub-blocks are equal, so C is the 2x2 all-ones matrix
    tensored with the Hermitian block; its spectrum is {2 eig} plus three
    zeros, hence PSD exactly when the block is.
    """
    return np.kron(np.ones((2, 2)), block.herm)


@dataclass(frozen=True)
class PrincipalFrame:
    """Orthogonal frame data for a bath block.

    rotation diagonalizes A with eigenvalues lam in descending order
    (rotation @ A @ rotation.T = diag(lam), det +1); B_rot = rotation @ B.
    closed_form_applicable is True when B_rot lies along a coordinate axis
    within angle 1e-10 (always true for B = 0).

    The aligned_* fields give the relabeled frame the closed forms assume:
    B along axis 3 with aligned_b = |B| >= 0 and the remaining axes ordered
    so aligned_lam[0] >= aligned_lam[1].  They are None when not applicable.
    """

    rotation: np.ndarray
    lam: np.ndarray
    B_rot: np.ndarray
    closed_form_applicable: bool
    boundary: bool
    aligned_rotation: np.ndarray | None
    aligned_lam: np.ndarray | None
    aligned_b: float | None


def _fix_signs(V, det_positive=True):
    # first component of magnitude above 1e-12 made positive, column by column
    V = V.copy()
    for c in range(V.shape[1]):
        col = V[:, c]
        for x in col:
            if abs(x) > 1e-12:
                if x < 0:
                    V[:, c] = -col
                break
    if det_positive and np.linalg.det(V) < 0:
        V[:, -1] *= -1  # det invariant wins over the sign rule for one column
    return V


def principal_frame(block):
    """Eigen-frame of A with deterministic ordering and B alignment.

    Descending eigenvalues; ties broken by making the first nonzero component
    of each eigenvector positive (one column re-flipped if needed for det +1).
    Within a degenerate eigenvalue cluster the basis is rotated so that the
    projection of B onto the cluster lies along a single axis; B is alignable
    exactly when its projections concentrate in one cluster.
    """
    A = block.A
    w, V = np.linalg.eigh(A)
    order = np.argsort(w)[::-1]
    lam = w[order]
    V = V[:, order]

    scale = max(1.0, float(np.abs(lam).max()))
    clusters = []
    start = 0
    for i in range(1, 3):
        if lam[start] - lam[i] > 1e-10 * scale:
            clusters.append(list(range(start, i)))
            start = i
    clusters.append(list(range(start, 3)))

    B = block.B
    bnorm = float(np.linalg.norm(B))
    applicable = True
    axis = None
    if bnorm > 0.0:
        projs = [V[:, c] @ (V[:, c].T @ B) for c in clusters]
        weights = [float(np.linalg.norm(p)) for p in projs]
        best = int(np.argmax(weights))
        applicable = bool(np.linalg.norm(B - projs[best]) <= 1e-10 * bnorm)
        if applicable:
            cols = clusters[best]
            if len(cols) > 1:
                # rotate the degenerate subspace so one axis follows B
                u = projs[best] / weights[best]
                basis = [u]
                for c in cols:
                    v = V[:, c] - sum(b * (b @ V[:, c]) for b in basis)
                    if np.linalg.norm(v) > 1e-8:
                        basis.append(v / np.linalg.norm(v))
                V[:, cols] = np.column_stack(basis[:len(cols)])
            # locate the axis carrying B after the rotation
            comps = np.abs(V.T @ B)
            axis = int(np.argmax(comps))

    V = _fix_signs(V)
    rotation = V.T
    B_rot = rotation @ B

    aligned_rotation = aligned_lam = aligned_b = None
    if applicable:
        if bnorm == 0.0:
            axis = 2  # no preferred direction; keep descending order
        others = [i for i in range(3) if i != axis]
        # remaining axes ordered by descending eigenvalue
        if lam[others[0]] < lam[others[1]]:
            others = others[::-1]
        perm = others + [axis]
        G = rotation[perm, :].copy()
        if (G @ B)[2] < 0:
            G[2, :] *= -1  # aligned frame wants b >= 0
        if np.linalg.det(G) < 0:
            G[1, :] *= -1
        aligned_rotation = G
        aligned_lam = lam[perm].copy()
        aligned_b = bnorm

    return PrincipalFrame(rotation=rotation, lam=lam, B_rot=B_rot,
                          closed_form_applicable=bool(applicable),
                          boundary=block.boundary,
                          aligned_rotation=aligned_rotation,
                          aligned_lam=aligned_lam, aligned_b=aligned_b)
