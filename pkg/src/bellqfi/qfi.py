"""Quantum Fisher information and its descending chain of correlator bounds.

For the collective generator h = (1/2) sum_k sigma_xi^(k) the package computes

    qfi_spectral >= bound_trace == bound_coherence >= bound_correlator_sum,

where the first inequality drops the eigenvalue denominators, the equality
rewrites the trace form in the generator eigenbasis, and the last inequality
replaces each group of coherences by the Bell correlator of the ladder
product connecting them.  The final bound is a non-negative combination of
Bell correlators of all orders, which is what ties nonlocality to metrological
sensitivity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._bits import popcount_table, submasks
from .correlators import exceeds
from .hilbert import (
    DensityMatrix,
    PureState,
    SpinTriad,
    dimension,
    to_generator_basis,
)
from .twomode import DickeState, collective_matrix

EIG_CUTOFF = 1e-12          # eigenvalue pairs below this are null-space artefacts
CORRELATOR_SUM_MAX_QUBITS = 14   # the exact sum touches Theta(4^N) amplitudes


def shot_noise(n_qubits: int) -> float:
    return float(n_qubits)


def heisenberg_limit(n_qubits: int) -> float:
    return float(n_qubits) ** 2


def qfi_spectral(rho: DensityMatrix, triad: SpinTriad | None = None,
                 eig_cutoff: float = EIG_CUTOFF) -> float:
    """QFI from the spectral decomposition of a density matrix.

    Terms whose eigenvalue pair sums to less than `eig_cutoff` are dropped;
    they belong to the null space and carry no information.
    """
    n = rho.n_qubits
    if triad is not None:
        rho = to_generator_basis(rho, triad)
    p, vecs = np.linalg.eigh(rho.elements)
    if p[0] < -1e-10:
        raise ValueError(f"density matrix has negative eigenvalue {p[0]:.3e}")
    weights = popcount_table(n) - n / 2
    overlap = vecs.conj().T @ (weights[:, None] * vecs)
    psum = p[:, None] + p[None, :]
    pdif = p[:, None] - p[None, :]
    keep = psum >= eig_cutoff
    ratio = np.zeros_like(psum)
    np.divide(pdif ** 2, psum, out=ratio, where=keep)
    return float(2.0 * np.sum(ratio * np.abs(overlap) ** 2))


def qfi_pure(state: PureState | DickeState, triad: SpinTriad | None = None) -> float:
    """QFI of a pure state: four times the generator variance."""
    if isinstance(state, DickeState):
        n = state.n_atoms
        a = state.amplitudes
        if triad is None or triad.is_z():
            m = np.arange(n + 1) - n / 2
            p = np.abs(a) ** 2
            return float(4.0 * (p @ m ** 2 - (p @ m) ** 2))
        h = collective_matrix(n, triad.xi)
        ha = h @ a
        return float(4.0 * (np.vdot(ha, ha).real - np.vdot(a, ha).real ** 2))
    state.require_normalized()
    n = state.n_qubits
    if triad is not None and not triad.is_z():
        state = to_generator_basis(state, triad)
    m = popcount_table(n) - n / 2
    p = np.abs(state.amplitudes) ** 2
    return float(4.0 * (p @ m ** 2 - (p @ m) ** 2))


def bound_trace(rho: DensityMatrix, triad: SpinTriad | None = None) -> float:
    """Lower bound 4 (Tr[rho^2 h^2] - Tr[(rho h)^2])."""
    n = rho.n_qubits
    if triad is not None:
        rho = to_generator_basis(rho, triad)
    m = (popcount_table(n) - n / 2).astype(float)
    mat = rho.elements
    first = float(np.sum((np.abs(mat) ** 2).sum(axis=1) * m ** 2).real)
    scaled = mat * m[None, :]
    second = float(np.sum(scaled * scaled.T).real)
    return 4.0 * (first - second)


def bound_coherence(state, triad: SpinTriad | None = None) -> float:
    """Lower bound 2 sum_{n,m} (n_up - m_up)^2 |rho_nm|^2 in the generator eigenbasis."""
    if isinstance(state, DickeState):
        counts = np.arange(state.n_atoms + 1, dtype=float)
        weights = np.abs(state.amplitudes) ** 2
        return _coherence_from_weights(counts, weights)
    if triad is not None:
        state = to_generator_basis(state, triad)
    if isinstance(state, PureState):
        counts = popcount_table(state.n_qubits).astype(float)
        weights = np.abs(state.amplitudes) ** 2
        return _coherence_from_weights(counts, weights)
    if isinstance(state, DensityMatrix):
        counts = popcount_table(state.n_qubits).astype(float)
        sq = np.abs(state.elements) ** 2
        rows = sq.sum(axis=1)
        cols = sq.sum(axis=0)
        cross = float(counts @ sq @ counts)
        return 2.0 * (float(counts ** 2 @ rows) + float(counts ** 2 @ cols) - 2.0 * cross)
    raise TypeError(f"unsupported state type {type(state).__name__}")


def _coherence_from_weights(counts: np.ndarray, weights: np.ndarray) -> float:
    # For rho = |psi><psi| the double sum collapses to 4 Var(n_up).
    mean = float(counts @ weights)
    mean_sq = float(counts ** 2 @ weights)
    return 4.0 * (mean_sq - mean ** 2)


def bound_correlator_sum(state, triad: SpinTriad | None = None,
                         max_order: int | None = None,
                         max_qubits: int = CORRELATOR_SUM_MAX_QUBITS) -> float:
    """Correlator-sum lower bound on the QFI.

    Sums, over every disjoint raising/lowering set pair, the Bell correlator
    weighted by (n_plus - n_minus)^2 / 2^(N - q).  Set pairs are enumerated as
    bitmask pairs (union mask, then submasks), and each trace is accumulated
    with a bincount over the untouched bits, so the total cost is Theta(4^N)
    amplitude accesses and no operator matrix is ever built.

    `max_order` truncates the sum at q = n_plus + n_minus <= max_order.  All
    terms are non-negative, so a truncated value is still a valid lower bound;
    report it as truncated, never as the full sum.
    """
    if isinstance(state, DickeState):
        raise TypeError("for permutation-symmetric states use symmetric_bound_correlator_sum")
    if triad is not None:
        state = to_generator_basis(state, triad)
    if isinstance(state, PureState):
        n, vec, mat = state.n_qubits, state.amplitudes, None
    elif isinstance(state, DensityMatrix):
        n, vec, mat = state.n_qubits, None, state.elements
    else:
        raise TypeError(f"unsupported state type {type(state).__name__}")
    if n > max_qubits:
        raise ValueError(f"{n} qubits exceeds the cap of {max_qubits} for the exact sum")

    pc = popcount_table(n)
    b = np.arange(dimension(n), dtype=np.int64)
    total = 0.0
    for mask in range(dimension(n)):
        q = int(pc[mask])
        if q == 0 or (max_order is not None and q > max_order):
            continue
        if vec is not None:
            vals = vec * np.conj(vec[b ^ mask])
        else:
            vals = mat[b, b ^ mask]
        key = b & mask
        trace = np.bincount(key, weights=vals.real, minlength=mask + 1).astype(np.complex128)
        trace += 1j * np.bincount(key, weights=vals.imag, minlength=mask + 1)
        subs = submasks(mask)                       # each submask = lowering set
        n_minus = pc[subs]
        coeff = (q - 2 * n_minus).astype(float) ** 2 / 2.0 ** (n - q)
        total += float(np.sum(coeff * np.abs(trace[subs]) ** 2))
    return 2.0 * total


def heisenberg_implication(e_full: float, n_qubits: int) -> float:
    """QFI floor implied by the full-N correlator value.

    If at least N - m qubits are Bell-correlated the QFI cannot fall below
    N^2 / 2^(m+1); returns 0 when no nonlocality is witnessed.
    """
    for m in range(0, n_qubits - 2):
        if exceeds(e_full, 0.25 * 2.0 ** (-(m + 1))):
            return n_qubits ** 2 / 2.0 ** (m + 1)
    return 0.0


def derivative_scan(series) -> list[tuple[float, float]]:
    """Finite-difference derivative of a (u, value) series with respect to |u|.

    Interior points use central differences, endpoints one-sided ones.  The u
    grid must be strictly monotone with at least three points.
    """
    pts = [(float(u), float(v)) for u, v in series]
    if len(pts) < 3:
        raise ValueError("need at least three grid points")
    u = np.array([p[0] for p in pts])
    val = np.array([p[1] for p in pts])
    du = np.diff(u)
    if not (np.all(du > 0) or np.all(du < 0)):
        raise ValueError("u grid must be strictly monotone")
    x = np.abs(u)
    deriv = np.empty_like(val)
    inner = x[2:] - x[:-2]
    if np.any(inner == 0) or x[1] == x[0] or x[-1] == x[-2]:
        raise ValueError("degenerate |u| spacing in the grid")
    deriv[1:-1] = (val[2:] - val[:-2]) / inner
    deriv[0] = (val[1] - val[0]) / (x[1] - x[0])
    deriv[-1] = (val[-1] - val[-2]) / (x[-1] - x[-2])
    return list(zip(u.tolist(), deriv.tolist()))


@dataclass(frozen=True)
class BoundReport:
    """QFI together with the full chain of lower bounds and reference scales."""

    n_qubits: int
    qfi: float
    bound_trace: float
    bound_coherence: float
    bound_correlator_sum: float | None
    shot_noise: float
    heisenberg: float


def bound_report(state, triad: SpinTriad | None = None,
                 max_order: int | None = None,
                 with_correlator_sum: bool = True) -> BoundReport:
    """Evaluate the whole bound chain for a pure state or density matrix."""
    if isinstance(state, PureState):
        n = state.n_qubits
        rho = DensityMatrix.from_pure(state)
        qfi = qfi_pure(state, triad)
    elif isinstance(state, DensityMatrix):
        n = state.n_qubits
        rho = state
        qfi = qfi_spectral(state, triad)
    else:
        raise TypeError(f"unsupported state type {type(state).__name__}")
    corr = None
    if with_correlator_sum and n <= CORRELATOR_SUM_MAX_QUBITS:
        corr = bound_correlator_sum(state, triad, max_order=max_order)
    return BoundReport(
        n_qubits=n,
        qfi=qfi,
        bound_trace=bound_trace(rho, triad),
        bound_coherence=bound_coherence(state, triad),
        bound_correlator_sum=corr,
        shot_noise=shot_noise(n),
        heisenberg=heisenberg_limit(n),
    )
