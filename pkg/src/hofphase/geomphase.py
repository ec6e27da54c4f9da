"""Geometric phases of adiabatically transported pin configurations.

A pin trajectory is discretized into Hamiltonian snapshots, the ground Slater
state is tracked step by step, and the closed-loop geometric phase is the
argument of the Bargmann product of successive overlaps

    phi_mod = Im log [ <psi_0|psi_n> * prod_j <psi_{j+1}|psi_j> ]

which is gauge invariant mod 2*pi (every intermediate orbital basis may be
regauged by an arbitrary unitary without changing it).

The physically accumulated phase can exceed 2*pi; no per-step bookkeeping of
the base loop alone can recover the winding number, because any gauge fixing
(e.g. polar alignment) makes per-step arguments vanish identically.  The
winding is instead obtained by radial continuation: the same loop is evaluated
on a ladder of equal-area intermediate radii, starting from the zero-radius
limit where the phase is 0, and phi_mod is unwrapped rung to rung.  Phase
differences between neighboring rungs stay well below pi by construction
(the enclosed-area increment Delta A keeps 2*pi*alpha*pi*Delta A small).

PhaseRecord.step_args sum to phi_unwrapped exactly.  Each entry is the
gauge-invariant three-vertex Bargmann argument of (psi_0, psi_j, psi_{j+1})
("fan sliver"); their telescoping product reproduces the closed-loop phase mod
2*pi, and the remaining winding correction is distributed uniformly so the
sum hits the continued branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .lattice import LatticeSpec, PinSpec, build_hamiltonian
from .manybody import (
    BandProjector,
    GroundStateDegenerate,
    SlaterState,
    ground_slater,
    ground_slater_projected,
    DEGENERACY_TOLERANCE,
)

__all__ = [
    "AlignmentLost",
    "PathKind",
    "PathPlan",
    "PhaseRecord",
    "slater_overlap",
    "align_to_previous",
    "sweep",
    "run_exchange",
    "wrap_angle",
]

OVERLAP_SINGULAR = 1e-12


class AlignmentLost(RuntimeError):
    """Consecutive ground states have (numerically) orthogonal subspaces."""


class PathKind(str, Enum):
    SINGLE_LOOP = "single_loop"
    EXCHANGE_HALF_LOOP = "exchange_half_loop"


def wrap_angle(phi: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    w = math.remainder(phi, 2.0 * math.pi)
    return math.pi if w == -math.pi else w


@dataclass(frozen=True)
class PathPlan:
    """Discretized circular trajectory of all pin centers.

    SINGLE_LOOP: one pin at angle theta0 + 2*pi*j/n_steps.
    EXCHANGE_HALF_LOOP: two antipodal pins at theta0 + pi*j/n_steps and its
    opposite; after n_steps each pin has traversed half the circle and the
    final configuration equals the initial one with the pins swapped.
    """

    kind: PathKind
    center: tuple[float, float]
    radius: float
    n_steps: int
    theta0: float = 0.0
    orientation: int = 1

    def __post_init__(self):
        if self.n_steps < 8:
            raise ValueError("n_steps must be at least 8")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.orientation not in (-1, 1):
            raise ValueError("orientation must be +1 or -1")
        object.__setattr__(self, "kind", PathKind(self.kind))

    @property
    def sweep_angle(self) -> float:
        return 2.0 * np.pi if self.kind is PathKind.SINGLE_LOOP else np.pi

    def positions(self, j: int) -> tuple[tuple[float, float], ...]:
        """Pin centers at step j, j = 0 .. n_steps."""
        x0, y0 = self.center
        th = self.theta0 + self.orientation * self.sweep_angle * j / self.n_steps
        p = (x0 + self.radius * np.cos(th), y0 + self.radius * np.sin(th))
        if self.kind is PathKind.SINGLE_LOOP:
            return (p,)
        q = (x0 - self.radius * np.cos(th), y0 - self.radius * np.sin(th))
        return (p, q)

    def at_radius(self, radius: float, n_steps: int | None = None) -> "PathPlan":
        return PathPlan(self.kind, self.center, radius,
                        n_steps or self.n_steps, self.theta0, self.orientation)


@dataclass(frozen=True, eq=False)
class PhaseRecord:
    """Per-step phases of one closed sweep.

    step_args has n_steps + 1 entries (transport steps plus the closing
    factor) and sums to phi_unwrapped exactly; phi_mod is that sum reduced to
    (-pi, pi] and equals the gauge-invariant Bargmann phase.  min_mag is the
    smallest overlap magnitude seen (adiabaticity proxy); reliable is the
    max |step_arg| < pi/2 flag.
    """

    step_args: np.ndarray
    step_mags: np.ndarray
    phi_unwrapped: float
    phi_mod: float
    min_mag: float
    reliable: bool
    winding: int


def slater_overlap(a: SlaterState, b: SlaterState) -> complex:
    """<a|b> = det of the orbital overlap matrix <a_k|b_l>."""
    if a.n_sites != b.n_sites or a.n_particles != b.n_particles:
        raise ValueError("Slater states of different shape")
    return complex(np.linalg.det(a.orbitals.conj().T @ b.orbitals))


def align_to_previous(prev: SlaterState, cur: SlaterState) -> SlaterState:
    """Re-base cur's orbitals by the unitary polar factor of <cur|prev>.

    The occupied subspace (densities, energies, closed-loop phases) is
    untouched; the per-step overlap with prev becomes the positive
    semidefinite factor of the polar decomposition.
    """
    if prev.n_sites != cur.n_sites or prev.n_particles != cur.n_particles:
        raise ValueError("Slater states of different shape")
    M = cur.orbitals.conj().T @ prev.orbitals
    U, s, Vh = np.linalg.svd(M)
    if s.min() < OVERLAP_SINGULAR:
        raise AlignmentLost(
            f"overlap matrix singular (smallest singular value {s.min():.2e})")
    return SlaterState(cur.orbitals @ (U @ Vh), cur.orbital_energies, cur.gap,
                       cur.Lx, cur.Ly)


def _solve_step(spec, pin_template, positions, N, projector, tol):
    pins = tuple(pin_template.moved_to(x, y) for (x, y) in positions)
    H = build_hamiltonian(spec, pins)
    if projector is not None:
        return ground_slater_projected(H, projector, N, tol)
    return ground_slater(H, N, tol)


def _loop_states(spec, pin_template, path, N, projector, tol, align: bool):
    states = []
    for j in range(path.n_steps + 1):
        try:
            st = _solve_step(spec, pin_template, path.positions(j), N, projector, tol)
        except GroundStateDegenerate as e:
            raise GroundStateDegenerate(f"step {j} of {path.n_steps}: {e}") from e
        if align and states:
            try:
                st = align_to_previous(states[-1], st)
            except AlignmentLost as e:
                raise AlignmentLost(f"step {j} of {path.n_steps}: {e}") from e
        states.append(st)
    return states


def _phase_factors(states):
    """Consecutive overlaps, closing factor last."""
    n = len(states) - 1
    facs = np.empty(n + 1, dtype=complex)
    for j in range(n):
        facs[j] = slater_overlap(states[j + 1], states[j])
    facs[n] = slater_overlap(states[0], states[n])
    return facs


def _bargmann_mod(facs) -> float:
    mags = np.abs(facs)
    if mags.min() < OVERLAP_SINGULAR:
        raise AlignmentLost(
            f"vanishing overlap at step {int(np.argmin(mags))} (|f|={mags.min():.2e})")
    return float(np.angle(np.prod(facs / mags)))


def _fan_slivers(states, facs):
    """Gauge-invariant per-step arguments from the psi_0 fan.

    sliver_j = arg( f_j * g_{j+1} / g_j ) with g_j = <psi_0|psi_j>; every
    factor is a three-vertex Bargmann invariant.  Where the fan collapses
    (|g| ~ 0) the raw step argument is used; the winding correction added by
    the caller keeps the sum exact either way.  The closing entry is 0: the
    closing factor is already consumed by the telescoping product.
    """
    n = len(states) - 1
    g = np.empty(n + 1, dtype=complex)
    g[0] = 1.0
    for j in range(1, n + 1):
        g[j] = slater_overlap(states[0], states[j])
    args = np.zeros(n + 1)
    for j in range(n):
        if min(abs(g[j]), abs(g[j + 1])) < 1e-9:
            args[j] = np.angle(facs[j])
        else:
            args[j] = np.angle(facs[j] * g[j + 1] / g[j])
    return args


def _ladder_phase(spec, pin_template, path, N, projector, tol,
                  ladder_steps: int, ladder_area: float) -> float:
    """Unwrapped loop phase at path.radius by equal-area radial continuation.

    Rung-to-rung phase steps must stay below pi; the area increment is capped
    by the background flux density so 2*pi*alpha*pi*dA stays small.
    """
    area = min(ladder_area, 0.08 / max(spec.alpha, 0.01))
    m = max(1, math.ceil(path.radius**2 / area))
    phi_prev = 0.0  # zero-radius limit: degenerate loop, zero phase
    total = 0.0
    for i in range(1, m + 1):
        rung = path.at_radius(path.radius * math.sqrt(i / m), ladder_steps)
        states = _loop_states(spec, pin_template, rung, N, projector, tol, align=False)
        mod = _bargmann_mod(_phase_factors(states))
        total += wrap_angle(mod - phi_prev)
        phi_prev = mod
    return total


def sweep(spec: LatticeSpec, pin_template: PinSpec, path: PathPlan, N: int,
          projector: BandProjector | None = None, *,
          unwrap: bool = True,
          reference_phase: float | None = None,
          ladder_steps: int = 24,
          ladder_area: float = 0.4,
          degeneracy_tolerance: float = DEGENERACY_TOLERANCE) -> PhaseRecord:
    """Track the ground Slater state around a closed pin path.

    The winding branch of phi_unwrapped is chosen by radial-ladder
    continuation (unwrap=True), by continuity against a caller-supplied
    nearby phase (reference_phase, e.g. the previous point of a flux grid),
    or not at all (unwrap=False: phi_unwrapped is the principal branch).

    Raises GroundStateDegenerate or AlignmentLost with the offending step
    index when adiabatic tracking breaks down.
    """
    states = _loop_states(spec, pin_template, path, N, projector,
                          degeneracy_tolerance, align=True)
    facs = _phase_factors(states)
    phi_mod = _bargmann_mod(facs)
    mags = np.abs(facs)

    if reference_phase is not None:
        target = reference_phase + wrap_angle(phi_mod - reference_phase)
    elif unwrap:
        ladder = _ladder_phase(spec, pin_template, path, N, projector,
                               degeneracy_tolerance, ladder_steps, ladder_area)
        target = phi_mod + 2.0 * np.pi * round((ladder - phi_mod) / (2.0 * np.pi))
    else:
        target = phi_mod

    winding = int(round((target - phi_mod) / (2.0 * np.pi)))
    args = _fan_slivers(states, facs)
    args += (target - args.sum()) / len(args)
    phi_unwrapped = float(args.sum())
    return PhaseRecord(
        step_args=args,
        step_mags=mags,
        phi_unwrapped=phi_unwrapped,
        phi_mod=wrap_angle(phi_unwrapped),
        min_mag=float(mags.min()),
        reliable=bool(np.abs(args).max() < np.pi / 2),
        winding=winding,
    )


def run_exchange(spec: LatticeSpec, pin_template: PinSpec, R: float,
                 n_steps: int, N: int,
                 projector: BandProjector | None = None, **kwargs) -> PhaseRecord:
    """Half-loop exchange of two antipodal pins around the lattice center."""
    path = PathPlan(PathKind.EXCHANGE_HALF_LOOP, spec.center, R, n_steps)
    return sweep(spec, pin_template, path, N, projector, **kwargs)
