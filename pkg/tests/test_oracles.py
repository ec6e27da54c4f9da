"""Self-checks of the Fock-space oracle before it certifies anything else."""

import numpy as np
import pytest
import scipy.linalg as sla

from oracles import (
    fock_basis,
    fock_ground_state,
    fock_overlap,
    many_body_matrix,
    slater_vector,
)


def _random_h1(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def _random_orbitals(n, N, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, N)) + 1j * rng.normal(size=(n, N))
    q, _ = np.linalg.qr(a)
    return q[:, :N]


def test_basis_size():
    assert len(fock_basis(6, 2)) == 15
    assert fock_basis(3, 3) == [(0, 1, 2)]


def test_one_fermion_reduces_to_h1():
    h1 = _random_h1(5, seed=1)
    assert np.allclose(many_body_matrix(h1, 1), h1, atol=1e-14)


def test_many_body_matrix_hermitian():
    h1 = _random_h1(6, seed=2)
    H = many_body_matrix(h1, 3)
    assert np.max(np.abs(H - H.conj().T)) < 1e-13


def test_free_fermion_spectrum():
    # eigenvalues of the N-fermion matrix are sums of N distinct h1 levels
    h1 = _random_h1(6, seed=3)
    eps = np.linalg.eigvalsh(h1)
    E0, _ = fock_ground_state(h1, 2)
    assert abs(E0 - (eps[0] + eps[1])) < 1e-10


def test_slater_vector_is_ground_eigenvector():
    h1 = _random_h1(6, seed=4)
    w, v = sla.eigh(h1)
    vec = slater_vector(v[:, :2])
    _, ground = fock_ground_state(h1, 2)
    # agreement up to a global phase
    assert abs(abs(vec.conj() @ ground) - 1.0) < 1e-10
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-12


def test_overlap_matches_determinant_formula():
    A = _random_orbitals(6, 3, seed=5)
    B = _random_orbitals(6, 3, seed=6)
    det = np.linalg.det(A.conj().T @ B)
    assert abs(fock_overlap(A, B) - det) < 1e-12


def test_slater_vector_rejects_mismatch():
    A = _random_orbitals(4, 2, seed=7)
    with pytest.raises(ValueError):
        slater_vector(A, n_particles=3)
