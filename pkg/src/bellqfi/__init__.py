"""Many-body Bell correlators, QFI lower bounds, and ground-state sweeps."""

from .correlators import (
    CorrelatorResult,
    CorrelatorSpec,
    bell_correlator,
    depth_threshold,
    nonlocality_depth,
)
from .hilbert import (
    DensityMatrix,
    PureState,
    SpinTriad,
    collective_generator_apply,
    generator_eigenvalue,
    ghz_state,
    ladder_apply,
    pauli_apply,
    product_plus_state,
)
from .ising import IsingParams, ising_ground_state, ising_matvec
from .qfi import (
    BoundReport,
    bound_coherence,
    bound_correlator_sum,
    bound_report,
    bound_trace,
    derivative_scan,
    heisenberg_implication,
    qfi_pure,
    qfi_spectral,
)
from .sweep import (
    SweepConfig,
    SweepRecord,
    run_derivative_scan,
    run_ising_sweep,
    run_two_mode_sweep,
)
from .twomode import (
    DickeState,
    TwoModeParams,
    dicke_to_full,
    symmetric_bound_correlator_sum,
    symmetric_correlator,
    two_mode_ground_state,
    two_mode_hamiltonian,
)
from .verify import verify_suite

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CorrelatorResult",
    "CorrelatorSpec",
    "DensityMatrix",
    "DickeState",
    "IsingParams",
    "PureState",
    "SpinTriad",
    "SweepConfig",
    "SweepRecord",
    "TwoModeParams",
    "bell_correlator",
    "bound_coherence",
    "bound_correlator_sum",
    "bound_report",
    "bound_trace",
    "collective_generator_apply",
    "depth_threshold",
    "derivative_scan",
    "dicke_to_full",
    "generator_eigenvalue",
    "ghz_state",
    "heisenberg_implication",
    "ising_ground_state",
    "ising_matvec",
    "ladder_apply",
    "nonlocality_depth",
    "pauli_apply",
    "product_plus_state",
    "qfi_pure",
    "qfi_spectral",
    "run_derivative_scan",
    "run_ising_sweep",
    "run_two_mode_sweep",
    "symmetric_bound_correlator_sum",
    "symmetric_correlator",
    "two_mode_ground_state",
    "two_mode_hamiltonian",
    "verify_suite",
]
