"""Transverse-field Ising chain with open boundaries: H = U sum sz.sz - sum sx.

The chain is solved in the even sector of the global spin-flip parity
(product of sigma_x over all qubits), which commutes with H.  At strong
coupling the ground doublet splits only exponentially in N; without the
sector restriction any eigensolver returns an arbitrary doublet mixture and
the highest-order correlator of the returned state becomes meaningless.  The
even-sector representative space keeps basis states with the top bit clear,
pairing each b with its complement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh

from .hilbert import PureState, dimension, fix_global_phase
from .lanczos import lowest_eigenpair

MIN_QUBITS = 2
MAX_QUBITS = 20
DENSE_MAX_QUBITS = 12


@dataclass(frozen=True)
class IsingParams:
    """Chain length and two-body coupling (sweeps use u < 0)."""

    n_qubits: int
    u: float

    def __post_init__(self):
        if not MIN_QUBITS <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must lie in [{MIN_QUBITS}, {MAX_QUBITS}]")


def ising_diagonal(n_qubits: int, u: float) -> np.ndarray:
    """Coupling part of H on each basis state: +u per equal-bit bond, -u per unequal."""
    b = np.arange(dimension(n_qubits), dtype=np.int64)
    flips = b ^ (b >> 1)
    unequal = np.zeros(dimension(n_qubits), dtype=np.int64)
    for j in range(n_qubits - 1):
        unequal += (flips >> j) & 1
    return u * ((n_qubits - 1) - 2 * unequal).astype(float)


def _field_apply(vec: np.ndarray, n_qubits: int) -> np.ndarray:
    """Accumulate -sum_j sigma_x^(j) |vec> via strided bit flips."""
    out = np.zeros_like(vec)
    for j in range(n_qubits):
        out -= vec.reshape(dimension(n_qubits) >> (j + 1), 2, 1 << j)[:, ::-1, :] \
            .reshape(vec.shape)
    return out


def ising_matvec(params: IsingParams, state: PureState) -> PureState:
    """Apply H without materialising it."""
    n = params.n_qubits
    if state.n_qubits != n:
        raise ValueError(f"state has {state.n_qubits} qubits, Hamiltonian expects {n}")
    psi = state.amplitudes
    out = ising_diagonal(n, params.u) * psi
    out += _field_apply(psi, n)
    return PureState(n, out)


# --- even-parity representative space: basis states with the top bit clear ---

def _even_dim(n_qubits: int) -> int:
    return dimension(n_qubits) >> 1


def _even_diagonal(n_qubits: int, u: float) -> np.ndarray:
    # the bond pattern of b and of its complement agree, so the half-table suffices
    return ising_diagonal(n_qubits, u)[: _even_dim(n_qubits)]


def _even_field_apply(vec: np.ndarray, n_qubits: int) -> np.ndarray:
    half = _even_dim(n_qubits)
    out = np.zeros_like(vec)
    for j in range(n_qubits - 1):
        out -= vec.reshape(half >> (j + 1), 2, 1 << j)[:, ::-1, :].reshape(half)
    # flipping the top bit leaves the representative space via complementation,
    # which reverses the index order
    out -= vec[::-1]
    return out


def _even_dense(n_qubits: int, u: float) -> np.ndarray:
    half = _even_dim(n_qubits)
    mat = np.zeros((half, half))
    idx = np.arange(half)
    mat[idx, idx] = _even_diagonal(n_qubits, u)
    for j in range(n_qubits - 1):
        mat[idx ^ (1 << j), idx] -= 1.0
    mat[half - 1 - idx, idx] -= 1.0
    return mat


def _expand_even(vec: np.ndarray) -> np.ndarray:
    # |b> + |~b> pairs carry equal weight; complements occupy the mirrored
    # upper half of the index range
    full = np.concatenate([vec, vec[::-1]]) / np.sqrt(2.0)
    return full


def ising_ground_state(params: IsingParams, method: str = "auto",
                       tol: float = 1e-10, max_iter: int = 2000,
                       restart_dim: int = 200) -> tuple[float, PureState]:
    """Ground energy and state, solved in the even spin-flip-parity sector.

    `method`: 'dense' (exact eigensolver on the sector matrix), 'lanczos'
    (matrix-free with full reorthogonalization), or 'auto' which picks dense
    up to 12 qubits.
    """
    n, u = params.n_qubits, params.u
    if method == "auto":
        method = "dense" if n <= DENSE_MAX_QUBITS else "lanczos"
    if method == "dense":
        vals, vecs = eigh(_even_dense(n, u), subset_by_index=(0, 0))
        energy, ground = float(vals[0]), vecs[:, 0]
    elif method == "lanczos":
        diag = _even_diagonal(n, u)

        def matvec(v):
            return diag * v + _even_field_apply(v, n)

        energy, ground, _ = lowest_eigenpair(
            matvec, _even_dim(n), tol=tol, max_iter=max_iter, restart_dim=restart_dim)
    else:
        raise ValueError(f"unknown method {method!r}")
    amps = fix_global_phase(_expand_even(ground))
    return energy, PureState(n, amps.astype(np.complex128))


def parity_expectation(state: PureState) -> float:
    """Expectation of the global spin flip; +1 on the even sector."""
    psi = state.amplitudes
    return float(np.real(np.vdot(psi, psi[::-1])))
