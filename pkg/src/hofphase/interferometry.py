"""Ramsey and spin-echo sequences for phase read-out via spinful impurities.

An impurity binds a quasihole only in its spin-up state, so a pi/2 pulse
splits the system into branches whose quasiholes traverse different paths;
the final pulse interferes them and the spin populations encode the relative
geometric phase.  Dynamical phases are taken as exactly cancelled by the
mirror-symmetric path plus the echo pulse, so transport contributes only
unit-modulus factors.

Branches are tracked explicitly as (spins, hole positions, amplitude); in the
two-impurity sequence the traversed transport legs are recorded symbolically
and the caller supplies the four possible leg-product factors, since the
coincident-position branches require products that do not factorize into
observable single-leg phases.  Coincident branches are kept (they carry norm)
and drop out only at the projection.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "Branch",
    "BranchState",
    "WilsonSample",
    "run_single_impurity_sequence",
    "run_two_impurity_sequence",
    "nonabelian_probability",
]

_SQ2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Branch:
    """One superposition branch: per-impurity spins and hole positions."""

    spins: tuple[str, ...]
    positions: tuple[str, ...]
    amplitude: complex
    legs: tuple[str, ...] = ()


@dataclass(frozen=True)
class BranchState:
    branches: tuple[Branch, ...]

    @property
    def norm(self) -> float:
        return float(sum(abs(b.amplitude) ** 2 for b in self.branches))


def _merged(branches) -> BranchState:
    acc: dict = {}
    for b in branches:
        key = (b.spins, b.positions, b.legs)
        acc[key] = acc.get(key, 0.0) + b.amplitude
    return BranchState(tuple(
        Branch(sp, pos, amp, legs) for (sp, pos, legs), amp in acc.items()
        if abs(amp) > 1e-15))


def _half_pulse(state: BranchState) -> BranchState:
    """pi/2 pulse on every impurity: up -> (up+down)/sqrt(2),
    down -> (up-down)/sqrt(2)."""
    out = []
    for b in state.branches:
        expanded = [((), 1.0)]
        for s in b.spins:
            step = []
            for prefix, sign in expanded:
                step.append((prefix + ("up",), sign))
                step.append((prefix + ("down",), sign if s == "up" else -sign))
            expanded = step
        scale = _SQ2 ** len(b.spins)
        for spins, sign in expanded:
            out.append(Branch(spins, b.positions, b.amplitude * sign / scale, b.legs))
    return _merged(out)


def _pi_pulse(state: BranchState) -> BranchState:
    flip = {"up": "down", "down": "up"}
    return BranchState(tuple(
        Branch(tuple(flip[s] for s in b.spins), b.positions, b.amplitude, b.legs)
        for b in state.branches))


def _transport(state: BranchState, moves, factors=None) -> BranchState:
    """Move the hole of every spin-up impurity listed in moves.

    moves: {impurity index: (from, to, leg label)}.  factors optionally maps
    leg label to a unit-modulus amplitude factor; otherwise the leg is only
    recorded and the caller attaches products later.
    """
    out = []
    for b in state.branches:
        positions = list(b.positions)
        legs = b.legs
        amp = b.amplitude
        for k, (src, dst, leg) in moves.items():
            if b.spins[k] == "up" and positions[k] == src:
                positions[k] = dst
                legs = legs + (leg,)
                if factors is not None:
                    amp *= factors[leg]
        out.append(Branch(b.spins, tuple(positions), amp, legs))
    return BranchState(tuple(out))


def _record(history, state):
    if history is not None:
        history.append(state.norm)


def run_single_impurity_sequence(phase_first_half: float,
                                 phase_second_half: float,
                                 norm_history: list | None = None) -> float:
    """Probability of finding the impurity spin-up at the target site.

    pi/2, transport of the up branch (acquiring phase_first_half), echo pi
    pulse, transport of the other branch (phase_second_half), pi/2, then
    projection.  Equals cos^2 of half the relative phase, the closed-loop
    geometric phase of the two paths.
    """
    state = BranchState((Branch(("up",), ("r",), 1.0),))
    state = _half_pulse(state)
    _record(norm_history, state)
    state = _transport(state, {0: ("r", "rp", "first")},
                       {"first": cmath.exp(1j * phase_first_half)})
    _record(norm_history, state)
    state = _pi_pulse(state)
    _record(norm_history, state)
    state = _transport(state, {0: ("r", "rp", "second")},
                       {"second": cmath.exp(1j * phase_second_half)})
    _record(norm_history, state)
    state = _half_pulse(state)
    _record(norm_history, state)
    amp = sum(b.amplitude for b in state.branches
              if b.spins == ("up",) and b.positions == ("rp",))
    return abs(amp) ** 2


def run_two_impurity_sequence(u13_u24: complex, u14_u23: complex,
                              u13_u23: complex, u14_u24: complex,
                              norm_history: list | None = None) -> float:
    """Probability of the joint spin-up pair at the swapped sites.

    Impurities start at r1 and r2; the first transport takes up-branch holes
    to r3 and r4, the echo flips spins, the second transport takes the
    remaining branches from r1 to r4 and r2 to r3.  The four arguments are
    the accumulated transport products of the four final branches: direct
    (U13 U24), exchanged (U14 U23), and the two coincident ones (U13 U23,
    U14 U24).  All must be unit modulus.  The direct and exchanged branches
    interfere in the projection; their relative phase is the geometric
    exchange phase.
    """
    products = {
        ("13", "24"): complex(u13_u24),
        ("14", "23"): complex(u14_u23),
        ("13", "23"): complex(u13_u23),
        ("14", "24"): complex(u14_u24),
    }
    for legs, p in products.items():
        if abs(abs(p) - 1.0) > 1e-9:
            raise ValueError(
                f"transport product for legs {legs} has modulus {abs(p):.6f}, expected 1")

    state = BranchState((Branch(("up", "up"), ("r1", "r2"), 1.0),))
    state = _half_pulse(state)
    _record(norm_history, state)
    state = _transport(state, {0: ("r1", "r3", "13"), 1: ("r2", "r4", "24")})
    _record(norm_history, state)
    state = _pi_pulse(state)
    _record(norm_history, state)
    state = _transport(state, {0: ("r1", "r4", "14"), 1: ("r2", "r3", "23")})
    _record(norm_history, state)
    state = _half_pulse(state)
    _record(norm_history, state)

    amp = 0.0
    for b in state.branches:
        if b.spins != ("up", "up") or set(b.positions) != {"r3", "r4"}:
            continue
        legs = tuple(sorted(b.legs))
        amp += b.amplitude * products[legs]
    return abs(amp) ** 2


@dataclass(frozen=True)
class WilsonSample:
    """Magnitude and phase of a closed-loop Wilson expectation value."""

    magnitude: float
    phase: float

    def __post_init__(self):
        if not 0.0 <= self.magnitude <= 1.0 + 1e-12:
            raise ValueError("magnitude must lie in [0, 1]")


def nonabelian_probability(w: WilsonSample) -> float:
    """Spin-up pair probability when transport acts on a degenerate manifold:
    (1/8) * (1 + |<W>| cos(arg <W>)).  At magnitude 1 this reduces to the
    Abelian two-impurity result."""
    return 0.125 * (1.0 + w.magnitude * math.cos(w.phase))
