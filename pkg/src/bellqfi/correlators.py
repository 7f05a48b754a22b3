"""Many-body Bell correlators and the witnessed nonlocality depth.

The correlator of a raising/lowering site-set pair is the squared modulus of
the trace of the state against the ladder-operator product.  Values above
2^-q (q operators in the product) are incompatible with local realism; values
above 4^-q already witness entanglement.  For the full-N correlator the value
additionally bounds from below how many qubits must share Bell correlations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._bits import mask_of, submasks
from .hilbert import DensityMatrix, PureState, dimension

# Threshold comparisons use a relative margin so that a value sitting
# numerically on a boundary never over-claims; an absolute margin would
# swamp every threshold below it once correlators reach 2^-40 scales.
THRESHOLD_SLACK = 1e-12

CORRELATOR_CEILING = 0.25   # any density-matrix element obeys |rho_nm|^2 <= 1/4


def exceeds(value: float, threshold: float) -> bool:
    """Strict threshold comparison with relative slack."""
    return value > threshold * (1.0 + THRESHOLD_SLACK)


def _check_sites(sites, label: str) -> tuple[int, ...]:
    out = tuple(int(s) for s in sites)
    if any(s < 0 for s in out):
        raise ValueError(f"{label} contains a negative site index")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError(f"{label} must be strictly increasing")
    return out


@dataclass(frozen=True)
class CorrelatorSpec:
    """Disjoint ordered site sets: qubits to raise (s_plus) and to lower (s_minus)."""

    s_plus: tuple[int, ...]
    s_minus: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "s_plus", _check_sites(self.s_plus, "s_plus"))
        object.__setattr__(self, "s_minus", _check_sites(self.s_minus, "s_minus"))
        if set(self.s_plus) & set(self.s_minus):
            raise ValueError("s_plus and s_minus overlap")
        if self.order == 0:
            raise ValueError("correlator needs at least one ladder operator")

    @classmethod
    def full(cls, n_qubits: int) -> "CorrelatorSpec":
        """The highest-order correlator: raise every qubit."""
        return cls(tuple(range(n_qubits)), ())

    @property
    def order(self) -> int:
        return len(self.s_plus) + len(self.s_minus)

    @property
    def mask_plus(self) -> int:
        return mask_of(self.s_plus)

    @property
    def mask_minus(self) -> int:
        return mask_of(self.s_minus)

    def validate_for(self, n_qubits: int) -> None:
        top = max(self.s_plus + self.s_minus)
        if top >= n_qubits:
            raise ValueError(f"site {top} out of range for {n_qubits} qubits")


@dataclass(frozen=True)
class CorrelatorResult:
    """Correlator value together with its order-q reference scales."""

    value: float
    order: int
    bell_limit: float
    entanglement_threshold: float

    def __post_init__(self):
        if self.value > CORRELATOR_CEILING + 1e-12:
            raise ValueError(f"correlator {self.value} exceeds the 1/4 ceiling")

    @classmethod
    def from_value(cls, value: float, order: int) -> "CorrelatorResult":
        return cls(float(value), order, 2.0 ** (-order), 4.0 ** (-order))

    @property
    def breaks_bell_limit(self) -> bool:
        return exceeds(self.value, self.bell_limit)

    @property
    def breaks_entanglement_threshold(self) -> bool:
        return exceeds(self.value, self.entanglement_threshold)


def ladder_trace(state, spec: CorrelatorSpec) -> complex:
    """Trace of the state against the raising/lowering product (before |.|^2).

    For pure states this sums conj(psi[b ^ mask]) * psi[b] over the 2^(N-q)
    basis states with all s_plus bits clear and all s_minus bits set; no
    operator matrix is ever materialised.
    """
    mp, mm = spec.mask_plus, spec.mask_minus
    union = mp | mm
    if isinstance(state, PureState):
        spec.validate_for(state.n_qubits)
        free = ~union & (dimension(state.n_qubits) - 1)
        b = mm | submasks(free)
        psi = state.amplitudes
        return complex(np.sum(np.conj(psi[b ^ union]) * psi[b]))
    if isinstance(state, DensityMatrix):
        spec.validate_for(state.n_qubits)
        free = ~union & (dimension(state.n_qubits) - 1)
        b = mm | submasks(free)
        return complex(np.sum(state.elements[b, b ^ union]))
    raise TypeError(f"unsupported state type {type(state).__name__}")


def bell_correlator(state, spec: CorrelatorSpec) -> CorrelatorResult:
    """Squared modulus of the ladder-product trace.

    Accepts pure states, density matrices, or permutation-symmetric states
    (for which the value depends only on the set sizes, not the chosen sites).
    """
    from .twomode import DickeState, symmetric_correlator  # deferred: avoids import cycle

    if isinstance(state, DickeState):
        spec.validate_for(state.n_atoms)
        return symmetric_correlator(state, len(spec.s_plus), len(spec.s_minus))
    t = ladder_trace(state, spec)
    return CorrelatorResult.from_value(abs(t) ** 2, spec.order)


def depth_threshold(depth: int, n_qubits: int) -> float:
    """Correlator value that must be exceeded to witness `depth` Bell-correlated qubits."""
    if depth < 3 or depth > n_qubits:
        raise ValueError(f"depth must lie in [3, {n_qubits}]")
    return 2.0 ** (-(n_qubits - depth + 3))


def nonlocality_depth(e_value: float, n_qubits: int) -> int:
    """Largest number of qubits that must be Bell-correlated to explain `e_value`.

    Applies to the full-N correlator only.  Returns 0 when the value does not
    exceed the local-realism bound 2^-N; otherwise the result lies in [3, N].
    """
    if e_value < 0.0:
        raise ValueError("correlator value cannot be negative")
    if e_value > CORRELATOR_CEILING + 1e-12:
        raise ValueError(f"correlator {e_value} exceeds the 1/4 ceiling")
    if not exceeds(e_value, 2.0 ** (-n_qubits)):
        return 0
    for depth in range(n_qubits, 2, -1):
        if exceeds(e_value, depth_threshold(depth, n_qubits)):
            return depth
    return 0
