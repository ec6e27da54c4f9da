"""Independent many-body oracle: exact Fock-space fermions on tiny lattices.

Everything here is built from first principles with no package imports, so it
can certify the package's determinant-based fast paths: the N-fermion Hilbert
space is enumerated explicitly, hopping matrices act with explicit
anticommutation signs, and Slater determinants are expanded into Fock
amplitudes by minors.  Usable only for a handful of particles on a handful of
sites, which is the point.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def fock_basis(n_sites: int, n_particles: int) -> list[tuple[int, ...]]:
    """All occupation configurations as sorted site-index tuples."""
    return list(itertools.combinations(range(n_sites), n_particles))


def many_body_matrix(h1: np.ndarray, n_particles: int) -> np.ndarray:
    """Second-quantized matrix of sum_ab h1[a,b] c+_a c_b on the N-fermion space.

    Sign bookkeeping: removing the fermion at position k of the ordered
    configuration gives (-1)^k; inserting at a site with m smaller occupied
    indices gives (-1)^m.
    """
    n_sites = h1.shape[0]
    basis = fock_basis(n_sites, n_particles)
    index = {cfg: i for i, cfg in enumerate(basis)}
    H = np.zeros((len(basis), len(basis)), dtype=complex)
    for j, cfg in enumerate(basis):
        for k, b in enumerate(cfg):
            rest = cfg[:k] + cfg[k + 1:]
            sign_b = (-1) ** k
            for a in range(n_sites):
                if h1[a, b] == 0:
                    continue
                if a in rest:
                    continue
                m = sum(1 for s in rest if s < a)
                new = tuple(sorted(rest + (a,)))
                H[index[new], j] += ((-1) ** m) * sign_b * h1[a, b]
    return H


def slater_vector(orbitals: np.ndarray, n_particles: int | None = None) -> np.ndarray:
    """Fock-space amplitudes of the Slater determinant of the given orbitals.

    Amplitude on configuration (r_1 < ... < r_N) is det of the corresponding
    orbital rows; normalization is inherited from orthonormal orbitals.
    """
    n_sites, N = orbitals.shape
    if n_particles is not None and n_particles != N:
        raise ValueError("orbital count does not match n_particles")
    basis = fock_basis(n_sites, N)
    vec = np.empty(len(basis), dtype=complex)
    for i, cfg in enumerate(basis):
        vec[i] = np.linalg.det(orbitals[list(cfg), :])
    return vec


def fock_overlap(orbitals_a: np.ndarray, orbitals_b: np.ndarray) -> complex:
    """<A|B> computed in the explicit Fock expansion."""
    va = slater_vector(orbitals_a)
    vb = slater_vector(orbitals_b)
    return complex(va.conj() @ vb)


def fock_ground_state(h1: np.ndarray, n_particles: int):
    """Ground eigenpair of the exact N-fermion matrix."""
    H = many_body_matrix(h1, n_particles)
    w, v = np.linalg.eigh(H)
    return w[0], v[:, 0]


def bargmann_mod(vectors) -> float:
    """Phase of the closed overlap product of a list of Fock vectors."""
    facs = []
    n = len(vectors) - 1
    for j in range(n):
        facs.append(vectors[j + 1].conj() @ vectors[j])
    facs.append(vectors[0].conj() @ vectors[n])
    facs = np.array(facs)
    return float(np.angle(np.prod(facs / np.abs(facs))))


def loop_phase_oracle(h1_list, n_particles: int) -> float:
    """Closed-loop ground-state Bargmann phase from exact diagonalization.

    h1_list holds the single-particle Hamiltonians at every step; the first
    and last entries should describe the same physical configuration.
    """
    vectors = []
    for h1 in h1_list:
        H = many_body_matrix(h1, n_particles)
        w, v = np.linalg.eigh(H)
        if w[1] - w[0] < 1e-10:
            raise RuntimeError("oracle ground state degenerate")
        vectors.append(v[:, 0])
    return bargmann_mod(vectors)
