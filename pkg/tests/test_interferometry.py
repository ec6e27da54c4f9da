"""Branch-tracked Ramsey and spin-echo sequences versus closed forms."""

import cmath
import math

import numpy as np
import pytest

from hofphase import (
    WilsonSample,
    nonabelian_probability,
    run_single_impurity_sequence,
    run_two_impurity_sequence,
)


def _two_impurity_products(rng):
    phases = rng.uniform(-math.pi, math.pi, size=4)
    u13, u24, u14, u23 = (cmath.exp(1j * p) for p in phases)
    return (u13 * u24, u14 * u23, u13 * u23, u14 * u24), phases


# ------------------------------------------------------------------ single

def test_single_equal_paths_full_contrast():
    assert run_single_impurity_sequence(0.7, 0.7) == pytest.approx(1.0, abs=1e-12)


def test_single_pi_difference_dark():
    assert run_single_impurity_sequence(math.pi, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_single_matches_cosine_closed_form():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        a, b = rng.uniform(-2 * math.pi, 2 * math.pi, size=2)
        want = math.cos((a - b) / 2.0) ** 2
        assert abs(run_single_impurity_sequence(a, b) - want) < 1e-12


def test_single_norm_preserved_through_pulses():
    hist = []
    run_single_impurity_sequence(1.1, -0.4, norm_history=hist)
    assert len(hist) == 5
    assert all(abs(n - 1.0) < 1e-12 for n in hist)


# --------------------------------------------------------------------- two

def test_two_all_unit_products_quarter():
    assert run_two_impurity_sequence(1, 1, 1, 1) == pytest.approx(0.25, abs=1e-12)


def test_two_relative_pi_dark():
    assert run_two_impurity_sequence(-1, 1, 1, 1) == pytest.approx(0.0, abs=1e-12)
    assert run_two_impurity_sequence(1, -1, 1, 1) == pytest.approx(0.0, abs=1e-12)


def test_two_coincident_products_do_not_enter():
    # branches where both holes end on the same site are projected out
    p = run_two_impurity_sequence(1, 1, 1j, cmath.exp(0.5j))
    assert p == pytest.approx(0.25, abs=1e-12)


def test_two_matches_cosine_closed_form():
    # p = (1/4) cos^2(Delta/2) with Delta the direct/exchanged phase difference
    rng = np.random.default_rng(1)
    for _ in range(1000):
        (p_direct, p_exch, p_c1, p_c2), phases = _two_impurity_products(rng)
        delta = cmath.phase(p_direct / p_exch)
        want = 0.25 * math.cos(delta / 2.0) ** 2
        got = run_two_impurity_sequence(p_direct, p_exch, p_c1, p_c2)
        assert abs(got - want) < 1e-12


def test_two_norm_preserved_through_pulses():
    hist = []
    run_two_impurity_sequence(1, 1, 1, 1, norm_history=hist)
    assert len(hist) == 5
    assert all(abs(n - 1.0) < 1e-12 for n in hist)


def test_two_rejects_nonunit_products():
    with pytest.raises(ValueError, match="modulus"):
        run_two_impurity_sequence(0.5, 1, 1, 1)
    with pytest.raises(ValueError, match="modulus"):
        run_two_impurity_sequence(1, 1, 1, 2.0)


# -------------------------------------------------------------- degenerate

def test_wilson_sample_validation():
    WilsonSample(1.0, 0.3)
    WilsonSample(0.0, -2.0)
    with pytest.raises(ValueError):
        WilsonSample(1.1, 0.0)
    with pytest.raises(ValueError):
        WilsonSample(-0.1, 0.0)


def test_nonabelian_values():
    assert nonabelian_probability(WilsonSample(0.0, 1.234)) == pytest.approx(0.125, abs=1e-12)
    assert nonabelian_probability(WilsonSample(1.0, math.pi)) == pytest.approx(0.0, abs=1e-12)
    assert nonabelian_probability(WilsonSample(1.0, 0.0)) == pytest.approx(0.25, abs=1e-12)


def test_nonabelian_abelian_limit_equals_two_impurity():
    # at unit Wilson magnitude the degenerate-manifold formula must agree
    # with the explicit two-impurity interference for every loop phase
    rng = np.random.default_rng(2)
    for _ in range(1000):
        phi = rng.uniform(-2 * math.pi, 2 * math.pi)
        direct = cmath.exp(1j * phi)
        got = nonabelian_probability(WilsonSample(1.0, phi))
        want = run_two_impurity_sequence(direct, 1, 1, 1)
        assert abs(got - want) < 1e-12


def test_nonabelian_bounded():
    rng = np.random.default_rng(3)
    for _ in range(200):
        w = WilsonSample(rng.uniform(0, 1), rng.uniform(-10, 10))
        assert 0.0 <= nonabelian_probability(w) <= 0.25 + 1e-12
