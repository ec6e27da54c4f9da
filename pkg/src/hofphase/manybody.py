"""Ground Slater states of quadratic lattice Hamiltonians.

All many-body objects here are free-fermion Slater determinants: the N-particle
ground state of a quadratic Hamiltonian is the determinant of its N lowest
orbitals.  The eigensolver is dense (lattices are at most a few hundred sites),
which keeps the pipeline deterministic; iterative solvers would inject
convergence-dependent phases into a phase-sensitive computation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .lattice import HamiltonianMatrix

__all__ = [
    "GroundStateDegenerate",
    "NoBandGap",
    "SlaterState",
    "DensityField",
    "BandProjector",
    "ground_slater",
    "ground_slater_projected",
    "density",
    "lowest_band_projector",
]

DEGENERACY_TOLERANCE = 1e-8


class GroundStateDegenerate(RuntimeError):
    """The N/N+1 eigenvalue gap closed; the tracked state is ill-defined."""


class NoBandGap(RuntimeError):
    """The low spectrum has no spacing large enough to call a band edge."""


@dataclass(frozen=True, eq=False)
class SlaterState:
    """N-fermion ground Slater determinant.

    orbitals: (n_sites, N) complex matrix with orthonormal columns.
    orbital_energies: the N occupied eigenvalues, ascending.
    gap: energy distance to the first unoccupied level.
    Lx, Ly: lattice shape, kept so densities stay geometry-aware.
    """

    orbitals: np.ndarray
    orbital_energies: np.ndarray
    gap: float
    Lx: int
    Ly: int

    @property
    def n_particles(self) -> int:
        return self.orbitals.shape[1]

    @property
    def n_sites(self) -> int:
        return self.orbitals.shape[0]

    @property
    def energy(self) -> float:
        return float(self.orbital_energies.sum())


@dataclass(frozen=True, eq=False)
class DensityField:
    """Site-resolved particle density on an Lx x Ly lattice.

    values is flat in site-index order (x + Lx*y); grid() reshapes to
    (Ly, Lx) rows of constant y.
    """

    values: np.ndarray
    Lx: int
    Ly: int

    def __post_init__(self):
        if self.values.shape != (self.Lx * self.Ly,):
            raise ValueError("density length does not match lattice shape")
        if self.values.min() < -1e-10 or self.values.max() > 1 + 1e-10:
            raise ValueError("density entries must lie in [0, 1]")

    def grid(self) -> np.ndarray:
        return self.values.reshape(self.Ly, self.Lx)

    @property
    def total(self) -> float:
        return float(self.values.sum())


@dataclass(frozen=True, eq=False)
class BandProjector:
    """Orthonormal basis of the lowest band of a pin-free Hamiltonian."""

    columns: np.ndarray

    @property
    def n_band(self) -> int:
        return self.columns.shape[1]


def ground_slater(H: HamiltonianMatrix, N: int,
                  degeneracy_tolerance: float = DEGENERACY_TOLERANCE) -> SlaterState:
    """N lowest orbitals of H, with the gap to orbital N+1 as a diagnostic.

    Raises GroundStateDegenerate when that gap falls below
    degeneracy_tolerance: a crossing at the Fermi level makes adiabatic
    tracking of "the" ground state meaningless.
    """
    dim = H.n_sites
    if not 1 <= N < dim:
        raise ValueError(f"need 1 <= N < {dim}, got N={N}")
    # one extra eigenpair beyond the occupied block, for the gap
    w, v = sla.eigh(H.matrix, subset_by_index=(0, N))
    gap = float(w[N] - w[N - 1])
    if gap <= degeneracy_tolerance:
        raise GroundStateDegenerate(
            f"gap {gap:.3e} at N={N} below tolerance {degeneracy_tolerance:.1e}")
    return SlaterState(v[:, :N], w[:N], gap, H.Lx, H.Ly)


def density(state: SlaterState) -> DensityField:
    """Site-resolved particle density <n_r> = sum_k |orbital_k(r)|^2."""
    return DensityField(np.sum(np.abs(state.orbitals) ** 2, axis=1),
                        state.Lx, state.Ly)


def lowest_band_projector(H_free: HamiltonianMatrix, *,
                          window_fraction: float = 0.4,
                          gap_factor: float = 5.5) -> BandProjector:
    """Basis of all eigenstates below the dominant low-spectrum gap.

    The band edge is the largest spacing between consecutive eigenvalues
    within the lowest window_fraction of the spectrum; it must exceed
    gap_factor times the mean spacing of that window, otherwise the spectrum
    is considered gapless there (NoBandGap).  The projector must be built
    from a pin-free Hamiltonian; flux defects are allowed.
    """
    if np.abs(np.diag(H_free.matrix)).max() > 1e-9:
        raise ValueError("band projector requires a pin-free Hamiltonian")
    w, v = np.linalg.eigh(H_free.matrix)
    K = max(3, int(round(window_fraction * len(w))))
    spacings = np.diff(w[:K])
    i_star = int(np.argmax(spacings))
    gap = spacings[i_star]
    if gap < gap_factor * spacings.mean():
        raise NoBandGap(
            f"largest low-spectrum spacing {gap:.3e} is only "
            f"{gap / spacings.mean():.1f}x the mean spacing")
    cols = v[:, : i_star + 1].copy()
    return BandProjector(cols)


def ground_slater_projected(H: HamiltonianMatrix, P: BandProjector, N: int,
                            degeneracy_tolerance: float = DEGENERACY_TOLERANCE) -> SlaterState:
    """Ground Slater state of H restricted to the band subspace of P.

    Diagonalizes the band-projected Hamiltonian and lifts the occupied
    orbitals back to the site basis.
    """
    M = P.n_band
    if not 1 <= N <= M:
        raise ValueError(f"need 1 <= N <= band dimension {M}, got N={N}")
    Hb = P.columns.conj().T @ H.matrix @ P.columns
    w, u = np.linalg.eigh(Hb)
    if N < M:
        gap = float(w[N] - w[N - 1])
        if gap <= degeneracy_tolerance:
            raise GroundStateDegenerate(
                f"projected gap {gap:.3e} at N={N} below tolerance {degeneracy_tolerance:.1e}")
    else:
        gap = np.inf  # band completely filled, nothing to cross
    return SlaterState(P.columns @ u[:, :N], w[:N], gap, H.Lx, H.Ly)
