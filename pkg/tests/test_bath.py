"""Bath validation, full coefficient matrix, and principal-frame geometry."""

import numpy as np
import pytest

from pairbath.bath import (BathValidityError, assemble_full_C, hermitian_block,
                           make_bath, principal_frame)

from conftest import (kossakowski_matrix, random_aligned_bath,
                      random_offaxis_bath, random_rotation)


def test_hermitian_block_matches_oracle(rng):
    for _ in range(10):
        A = rng.normal(size=(3, 3))
        A = 0.5 * (A + A.T)
        B = rng.normal(size=3)
        assert np.abs(hermitian_block(A, B) - kossakowski_matrix(A, B)).max() < 1e-15


def test_make_bath_basic():
    blk = make_bath(np.diag([2.0, 1.0, 1.0]), [0, 0, 1.0])
    assert np.allclose(blk.A, np.diag([2, 1, 1]))
    assert np.allclose(blk.B, [0, 0, 1])
    assert blk.A_tr == 4.0
    assert np.all(np.diff(blk.eigs) >= 0)
    assert np.abs(blk.herm - blk.herm.conj().T).max() < 1e-15
    assert not blk.boundary


def test_make_bath_rejects_nonpsd():
    # bath vector exceeding the rate geometry makes the block indefinite
    with pytest.raises(BathValidityError, match="eigenvalue"):
        make_bath(np.eye(3), [0, 0, 1.5])


def test_make_bath_rejects_asymmetric():
    A = np.eye(3)
    A[0, 1] = 1e-6
    with pytest.raises(BathValidityError, match="symmetric"):
        make_bath(A, np.zeros(3))


def test_make_bath_symmetrizes_tiny_asymmetry():
    A = np.eye(3)
    A[0, 1] = 5e-13
    with pytest.warns(UserWarning, match="symmetrizing"):
        blk = make_bath(A, np.zeros(3))
    assert np.abs(blk.A - blk.A.T).max() == 0.0


def test_boundary_flag():
    assert make_bath(np.eye(3), [0, 0, 1.0]).boundary          # b^2 = lam1 lam2
    assert not make_bath(np.eye(3), [0, 0, 0.99]).boundary
    assert make_bath(np.diag([1.0, 1.0, 0.0]), np.zeros(3)).boundary
    assert make_bath(np.zeros((3, 3)), np.zeros(3)).boundary


def test_assemble_full_C(rng):
    blk = random_aligned_bath(rng)
    C = assemble_full_C(blk)
    assert C.shape == (6, 6)
    for r in range(2):
        for c in range(2):
            assert np.abs(C[3 * r:3 * r + 3, 3 * c:3 * c + 3] - blk.herm).max() == 0.0
    spec = np.sort(np.linalg.eigvalsh(C))
    expect = np.sort(np.concatenate([2 * blk.eigs, np.zeros(3)]))
    assert np.abs(spec - expect).max() < 1e-12


def test_principal_frame_generic(rng):
    for _ in range(15):
        blk = random_aligned_bath(rng)
        fr = principal_frame(blk)
        R = fr.rotation
        assert np.abs(R @ R.T - np.eye(3)).max() < 1e-12
        assert np.linalg.det(R) > 0.99
        assert np.abs(R @ blk.A @ R.T - np.diag(fr.lam)).max() < 1e-10
        assert np.all(np.diff(fr.lam) <= 1e-12)
        assert np.abs(fr.B_rot - R @ blk.B).max() < 1e-14
        assert fr.closed_form_applicable

        G = fr.aligned_rotation
        assert np.abs(G @ G.T - np.eye(3)).max() < 1e-12
        assert np.linalg.det(G) > 0.99
        assert np.abs(G @ blk.A @ G.T - np.diag(fr.aligned_lam)).max() < 1e-9
        b_vec = G @ blk.B
        assert np.abs(b_vec[:2]).max() < 1e-9 * max(1.0, fr.aligned_b)
        assert b_vec[2] >= 0
        assert np.isclose(b_vec[2], np.linalg.norm(blk.B))
        assert fr.aligned_lam[0] >= fr.aligned_lam[1] - 1e-12


def test_principal_frame_off_axis(rng):
    for _ in range(10):
        fr = principal_frame(random_offaxis_bath(rng))
        assert not fr.closed_form_applicable
        assert fr.aligned_rotation is None
        assert fr.aligned_lam is None
        assert fr.aligned_b is None


def test_principal_frame_zero_B(rng):
    blk = make_bath(np.diag([3.0, 2.0, 1.0]), np.zeros(3))
    fr = principal_frame(blk)
    assert fr.closed_form_applicable
    assert fr.aligned_b == 0.0
    assert np.allclose(fr.lam, [3, 2, 1])
    assert np.allclose(fr.aligned_lam, [3, 2, 1])


def test_principal_frame_fully_degenerate(rng):
    # isotropic A: any B direction is a principal axis
    for _ in range(5):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        blk = make_bath(1.3 * np.eye(3), 0.7 * direction)
        fr = principal_frame(blk)
        assert fr.closed_form_applicable
        assert np.allclose(fr.aligned_lam, [1.3, 1.3, 1.3])
        assert np.isclose(fr.aligned_b, 0.7)
        b_vec = fr.aligned_rotation @ blk.B
        assert np.abs(b_vec - [0, 0, 0.7]).max() < 1e-10


def test_principal_frame_planar_degeneracy(rng):
    # doubly degenerate A with B inside the degenerate plane: alignable
    lam = np.array([2.0, 2.0, 0.5])
    for _ in range(5):
        theta = rng.uniform(0, 2 * np.pi)
        B = 0.6 * np.array([np.cos(theta), np.sin(theta), 0.0])
        Q = random_rotation(rng)
        A = Q @ np.diag(lam) @ Q.T
        blk = make_bath(0.5 * (A + A.T), Q @ B)
        fr = principal_frame(blk)
        assert fr.closed_form_applicable
        # B rides the degenerate rate; the leftover degenerate axis and the
        # odd one out are sorted descending
        assert np.allclose(sorted(fr.aligned_lam, reverse=True), [2, 2, 0.5])
        assert np.isclose(fr.aligned_lam[2], 2.0)
        assert np.isclose(fr.aligned_b, 0.6)


def test_planar_degeneracy_B_out_of_plane_not_applicable(rng):
    lam = np.diag([2.0, 2.0, 0.5])
    B = 0.3 * np.array([1.0, 0.0, 1.0]) / np.sqrt(2)  # mixes both clusters
    fr = principal_frame(make_bath(lam, B))
    assert not fr.closed_form_applicable


def test_frame_deterministic(rng):
    blk = random_aligned_bath(rng)
    f1 = principal_frame(blk)
    f2 = principal_frame(blk)
    assert np.array_equal(f1.rotation, f2.rotation)
    assert np.array_equal(f1.aligned_rotation, f2.aligned_rotation)
