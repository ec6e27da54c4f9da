"""Adiabatic transport of pinned particles and holes in flux lattices.

Build a square-lattice hopping Hamiltonian with arbitrary per-plaquette flux,
pin (quasi)particles with Gaussian potentials, drag the pins around closed
loops, and read out gauge-invariant geometric phases, fitted charges,
exchange statistics, and windowed charge expectation values.  A small
interferometry layer models the Ramsey and echo sequences that would measure
those phases in an experiment.
"""

from .lattice import (
    DefectFlux,
    HamiltonianMatrix,
    LatticeSpec,
    PinSpec,
    build_hamiltonian,
    pin_diagonal,
    plaquette_flux,
)
from .manybody import (
    DEGENERACY_TOLERANCE,
    BandProjector,
    DensityField,
    GroundStateDegenerate,
    NoBandGap,
    SlaterState,
    density,
    ground_slater,
    ground_slater_projected,
    lowest_band_projector,
)
from .geomphase import (
    AlignmentLost,
    PathKind,
    PathPlan,
    PhaseRecord,
    align_to_previous,
    run_exchange,
    slater_overlap,
    sweep,
    wrap_angle,
)
from .analysis import (
    ChargeFit,
    charge_expectation,
    deviation_from_pi,
    exchange_phase,
    fit_charge,
    magnetic_length,
    predict_ab_background,
    predict_ab_local,
)
from .interferometry import (
    Branch,
    BranchState,
    WilsonSample,
    nonabelian_probability,
    run_single_impurity_sequence,
    run_two_impurity_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "DefectFlux", "HamiltonianMatrix", "LatticeSpec", "PinSpec",
    "build_hamiltonian", "pin_diagonal", "plaquette_flux",
    "DEGENERACY_TOLERANCE", "BandProjector", "DensityField",
    "GroundStateDegenerate", "NoBandGap", "SlaterState", "density",
    "ground_slater", "ground_slater_projected", "lowest_band_projector",
    "AlignmentLost", "PathKind", "PathPlan", "PhaseRecord",
    "align_to_previous", "run_exchange", "slater_overlap", "sweep",
    "wrap_angle",
    "ChargeFit", "charge_expectation", "deviation_from_pi", "exchange_phase",
    "fit_charge", "magnetic_length", "predict_ab_background",
    "predict_ab_local",
    "Branch", "BranchState", "WilsonSample", "nonabelian_probability",
    "run_single_impurity_sequence", "run_two_impurity_sequence",
    "__version__",
]
