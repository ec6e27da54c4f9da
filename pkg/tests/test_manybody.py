"""Ground Slater states, densities, gaps, and the lowest-band projector."""

import numpy as np
import pytest

from hofphase import (
    BandProjector,
    DefectFlux,
    GroundStateDegenerate,
    LatticeSpec,
    NoBandGap,
    PinSpec,
    build_hamiltonian,
    density,
    ground_slater,
    ground_slater_projected,
    lowest_band_projector,
)


def _h(Lx, Ly, alpha, dphi=0.0, pins=()):
    defect = (DefectFlux.central_block(Lx, Ly, dphi)
              if min(Lx, Ly) >= 3 else DefectFlux(()))
    return build_hamiltonian(LatticeSpec(Lx, Ly, alpha, defect), pins)


def test_2x2_single_particle_ground_state():
    st = ground_slater(_h(2, 2, 0.0), 1)
    assert st.orbital_energies[0] == pytest.approx(-2.0, abs=1e-12)
    assert np.allclose(np.abs(st.orbitals[:, 0]), 0.5, atol=1e-12)
    assert st.gap == pytest.approx(2.0, abs=1e-12)


def test_2x2_two_particles_degenerate():
    # 4-cycle spectrum is (-2, 0, 0, 2): the 2-particle gap closes
    with pytest.raises(GroundStateDegenerate):
        ground_slater(_h(2, 2, 0.0), 2)


def test_orbitals_orthonormal_and_eigenresidual():
    H = _h(7, 7, 0.3, dphi=0.1, pins=(PinSpec((3.1, 2.8), -1.7),))
    st = ground_slater(H, 6)
    gram = st.orbitals.conj().T @ st.orbitals
    assert np.max(np.abs(gram - np.eye(6))) < 1e-10
    res = H.matrix @ st.orbitals - st.orbitals * st.orbital_energies
    assert np.max(np.abs(res)) < 1e-10 * np.linalg.norm(H.matrix)


def test_insulator_fills_lowest_band():
    st = ground_slater(_h(15, 15, 0.2), 35)
    assert st.orbital_energies.max() < -2.7  # below the bulk band edge
    assert st.gap > 1e-3
    n = density(st)
    assert n.total == pytest.approx(35.0, abs=1e-10)
    # bulk filling ~ alpha
    center = [n.values[x + 15 * y] for x in range(5, 10) for y in range(5, 10)]
    assert abs(np.mean(center) - 0.2) < 0.02


def test_pin_depletes_density():
    pin = PinSpec((10.5, 7.0), 1.5, 1.0)
    st = ground_slater(_h(15, 15, 0.2, pins=(pin,)), 35)
    n = density(st).grid()
    # nearest sites to the pin center are nearly emptied
    assert n[7, 10] < 0.05 and n[7, 11] < 0.05


def test_density_field_invariants():
    st = ground_slater(_h(4, 5, 0.1), 3)
    n = density(st)
    assert n.values.shape == (20,)
    assert n.grid().shape == (5, 4)
    assert n.values.min() >= -1e-12 and n.values.max() <= 1 + 1e-12
    assert n.total == pytest.approx(3.0, abs=1e-10)


def test_fully_filled_density_is_one():
    H = _h(3, 3, 0.2)
    st = ground_slater(H, 8)
    assert density(st).values[: 8].max() <= 1 + 1e-12
    # fill all but one then all: completeness at N = dim requires the full
    # spectrum, checked through the projected variant with a full-space basis
    w, v = np.linalg.eigh(H.matrix)
    full = BandProjector(v)
    st_all = ground_slater_projected(H, full, 9)
    assert np.allclose(density(st_all).values, 1.0, atol=1e-10)


def test_variational_monotonicity():
    base = ground_slater(_h(6, 6, 0.2), 5).energy
    for v in (0.5, 1.5, 3.0):
        pinned = ground_slater(_h(6, 6, 0.2, pins=(PinSpec((2.5, 2.5), v),)), 5)
        assert pinned.energy >= base - 1e-12
        base_v = pinned.energy
    assert base_v >= base


def test_band_projector_size_and_validation():
    P = lowest_band_projector(_h(15, 15, 0.2))
    assert 40 <= P.n_band <= 50
    gram = P.columns.conj().T @ P.columns
    assert np.max(np.abs(gram - np.eye(P.n_band))) < 1e-10
    with pytest.raises(NoBandGap):
        lowest_band_projector(_h(15, 15, 0.0))
    with pytest.raises(ValueError):
        lowest_band_projector(_h(15, 15, 0.2, pins=(PinSpec((7.0, 7.0), 1.5),)))


def test_projected_full_space_matches_unprojected():
    H = _h(6, 6, 0.2, pins=(PinSpec((2.5, 2.5), 1.0),))
    w, v = np.linalg.eigh(H.matrix)
    st_full = ground_slater_projected(H, BandProjector(v), 4)
    st = ground_slater(H, 4)
    # occupied subspaces agree even though orbital phases may differ
    pr_full = st_full.orbitals @ st_full.orbitals.conj().T
    pr = st.orbitals @ st.orbitals.conj().T
    assert np.max(np.abs(pr_full - pr)) < 1e-10
    assert np.allclose(st_full.orbital_energies, st.orbital_energies, atol=1e-10)


def test_projected_density_close_to_unprojected():
    pin = PinSpec((10.5, 7.0), 1.5, 1.0)
    H = _h(15, 15, 0.2, pins=(pin,))
    P = lowest_band_projector(_h(15, 15, 0.2))
    n_proj = density(ground_slater_projected(H, P, 35)).values
    n_full = density(ground_slater(H, 35)).values
    assert np.max(np.abs(n_proj - n_full)) < 0.05


def test_filled_band_is_pin_insensitive():
    P = lowest_band_projector(_h(15, 15, 0.2))
    M = P.n_band
    n_free = density(ground_slater_projected(_h(15, 15, 0.2), P, M)).values
    pin = PinSpec((7.0, 7.0), 1.5, 1.0)
    n_pin = density(ground_slater_projected(_h(15, 15, 0.2, pins=(pin,)), P, M)).values
    assert np.max(np.abs(n_pin - n_free)) < 1e-8


def test_particle_count_bounds():
    H = _h(3, 3, 0.1)
    with pytest.raises(ValueError):
        ground_slater(H, 0)
    with pytest.raises(ValueError):
        ground_slater(H, 9)  # N < dim required: the gap above is undefined
    P = lowest_band_projector(_h(15, 15, 0.2))
    with pytest.raises(ValueError):
        ground_slater_projected(_h(15, 15, 0.2), P, P.n_band + 1)
