"""Two-mode collective-spin model in the permutation-symmetric (Dicke) subspace.

H = -J_x + u_eff J_z^2 describes N bosonic qubits (for instance a condensate
in a double well).  The package exposes a dimensionless control u with
u_eff = u / N, which pins the mean-field transition at u = -1 for every N;
the raw coupling (u_eff = u, transition at -1/N) stays available behind the
`convention` switch.

The Dicke basis |k>, k = number of up spins along z, makes H real symmetric
tridiagonal.  As in the Ising module the ground state is resolved inside the
even sector of the k <-> N-k spin-flip parity: beyond the transition the
cat doublet splits below machine precision and an unprojected solver returns
an arbitrary, typically fully localised, mixture.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from ._bits import popcount_table
from .correlators import CorrelatorResult
from .hilbert import MAX_DENSE_QUBITS, PureState, fix_global_phase

MIN_ATOMS = 2
MAX_ATOMS = 2000
SYMMETRIC_SUM_MAX_ATOMS = 1000

LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class TwoModeParams:
    """Atom number and dimensionless coupling; `convention` picks the u scaling."""

    n_atoms: int
    u: float
    convention: str = "scaled"

    def __post_init__(self):
        if not MIN_ATOMS <= self.n_atoms <= MAX_ATOMS:
            raise ValueError(f"n_atoms must lie in [{MIN_ATOMS}, {MAX_ATOMS}]")
        if self.convention not in ("scaled", "raw"):
            raise ValueError("convention must be 'scaled' or 'raw'")

    @property
    def u_effective(self) -> float:
        return self.u / self.n_atoms if self.convention == "scaled" else self.u


@dataclass
class DickeState:
    """Amplitudes over the symmetric subspace, indexed by the number of up spins."""

    n_atoms: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError("need at least one atom")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.n_atoms + 1,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({self.n_atoms + 1},)")
        self.amplitudes = amps

    def require_normalized(self, tol: float = 1e-12) -> None:
        err = abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0)
        if err > tol:
            raise ValueError(f"state is not normalized: |<psi|psi> - 1| = {err:.3e}")


def ghz_dicke(n_atoms: int) -> DickeState:
    amps = np.zeros(n_atoms + 1, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return DickeState(n_atoms, amps)


def coherent_plus_dicke(n_atoms: int) -> DickeState:
    """All spins along +x: binomial amplitudes sqrt(C(N,k)) / 2^(N/2)."""
    k = np.arange(n_atoms + 1)
    amps = np.exp(0.5 * _ln_binom(n_atoms, k) - 0.5 * n_atoms * LN2)
    return DickeState(n_atoms, amps.astype(np.complex128))


def random_dicke_state(n_atoms: int, rng: np.random.Generator) -> DickeState:
    amps = rng.normal(size=n_atoms + 1) + 1j * rng.normal(size=n_atoms + 1)
    amps /= np.linalg.norm(amps)
    return DickeState(n_atoms, amps)


def _ln_binom(n, k):
    return gammaln(n + 1.0) - gammaln(np.asarray(k) + 1.0) - gammaln(n - np.asarray(k) + 1.0)


def collective_matrix(n_atoms: int, axis) -> np.ndarray:
    """Collective spin component in the Dicke basis, (N+1) x (N+1).

    `axis` is 'x', 'y', 'z' or a unit 3-vector; the operator is the
    corresponding combination of J_x, J_y, J_z for total spin N/2.
    """
    k = np.arange(n_atoms)
    raising = 0.5 * np.sqrt((n_atoms - k) * (k + 1.0))   # <k+1| J_x |k>
    jx = np.zeros((n_atoms + 1, n_atoms + 1), dtype=complex)
    jx[k + 1, k] = raising
    jx[k, k + 1] = raising
    jy = np.zeros_like(jx)
    jy[k + 1, k] = -1j * raising
    jy[k, k + 1] = 1j * raising
    jz = np.diag((np.arange(n_atoms + 1) - n_atoms / 2).astype(complex))
    if isinstance(axis, str):
        try:
            return {"x": jx, "y": jy, "z": jz}[axis]
        except KeyError:
            raise ValueError(f"unknown axis {axis!r}") from None
    vec = np.asarray(axis, dtype=float)
    return vec[0] * jx + vec[1] * jy + vec[2] * jz


def two_mode_tridiagonal(params: TwoModeParams) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and first off-diagonal of H in the Dicke basis."""
    n = params.n_atoms
    m = np.arange(n + 1) - n / 2
    diag = params.u_effective * m ** 2
    k = np.arange(n)
    off = -0.5 * np.sqrt((n - k) * (k + 1.0))
    return diag, off


def two_mode_hamiltonian(params: TwoModeParams) -> np.ndarray:
    """Dense (N+1) x (N+1) real symmetric matrix of H = -J_x + u_eff J_z^2."""
    diag, off = two_mode_tridiagonal(params)
    mat = np.diag(diag)
    idx = np.arange(params.n_atoms)
    mat[idx + 1, idx] = off
    mat[idx, idx + 1] = off
    return mat


def two_mode_ground_state(params: TwoModeParams,
                          even_parity: bool = True) -> tuple[float, DickeState]:
    """Lowest eigenpair of the tridiagonal H; global phase fixed deterministically.

    With `even_parity` (the default) the solve runs on the half-size fold of
    the k <-> N-k reflection, which is where the true ground state lives and
    which stays well-posed when the cat doublet becomes degenerate to machine
    precision.
    """
    n = params.n_atoms
    diag, off = two_mode_tridiagonal(params)
    if not even_parity:
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0))
        amps = vecs[:, 0]
    else:
        half = n // 2
        if n % 2 == 0:
            fold_diag = diag[: half + 1].copy()
            fold_off = off[:half].copy()
            fold_off[-1] *= np.sqrt(2.0)     # central state pairs with itself
        else:
            fold_diag = diag[: half + 1].copy()
            fold_diag[-1] += off[half]       # reflection couples the central pair
            fold_off = off[:half].copy()
        vals, vecs = eigh_tridiagonal(fold_diag, fold_off, select="i", select_range=(0, 0))
        v = vecs[:, 0]
        amps = np.empty(n + 1)
        if n % 2 == 0:
            amps[:half] = v[:half] / np.sqrt(2.0)
            amps[half] = v[half]
            amps[half + 1:] = v[:half][::-1] / np.sqrt(2.0)
        else:
            amps[: half + 1] = v / np.sqrt(2.0)
            amps[half + 1:] = v[::-1] / np.sqrt(2.0)
    amps = fix_global_phase(amps)
    return float(vals[0]), DickeState(n, amps.astype(np.complex128))


def dicke_to_full(state: DickeState, max_qubits: int = MAX_DENSE_QUBITS) -> PureState:
    """Embed a symmetric state into the full 2^N space (oracle bridge, small N)."""
    n = state.n_atoms
    if n > max_qubits:
        raise ValueError(f"{n} atoms exceeds the full-space cap of {max_qubits}")
    weights = np.exp(-0.5 * _ln_binom(n, np.arange(n + 1)))
    counts = popcount_table(n)
    amps = state.amplitudes[counts] * weights[counts]
    return PureState(n, amps)


def symmetric_correlator(state: DickeState, n_plus: int, n_minus: int) -> CorrelatorResult:
    """Bell correlator of a symmetric state for any disjoint sets of the given sizes.

    Closed form: summing conj(psi[b ^ mask]) psi[b] over the basis states with
    the raising bits clear and lowering bits set leaves a single sum over the
    number f of up spins among the N - q untouched sites,

        T = sum_f C(N-q, f) conj(a[f + n_plus]) a[f + n_minus]
                  / sqrt(C(N, f + n_plus) C(N, f + n_minus)),

    independent of which sites were picked.  Binomials are combined in log
    space; the ratio never exceeds 1.
    """
    n = state.n_atoms
    if n_plus < 0 or n_minus < 0:
        raise ValueError("set sizes cannot be negative")
    q = n_plus + n_minus
    if q == 0:
        raise ValueError("correlator needs at least one ladder operator")
    if q > n:
        raise ValueError(f"set sizes {n_plus}+{n_minus} exceed {n} atoms")
    a = state.amplitudes
    f = np.arange(n - q + 1)
    ln_ratio = _ln_binom(n - q, f) - 0.5 * (_ln_binom(n, f + n_plus) + _ln_binom(n, f + n_minus))
    t = complex(np.sum(np.exp(ln_ratio) * np.conj(a[f + n_plus]) * a[f + n_minus]))
    return CorrelatorResult.from_value(abs(t) ** 2, q)


def symmetric_bound_correlator_sum(state: DickeState, max_order: int | None = None,
                                   max_atoms: int = SYMMETRIC_SUM_MAX_ATOMS) -> float:
    """Correlator-sum QFI bound with the site sum done by multiplicity counting.

    Permutation symmetry turns the sum over disjoint set pairs into
    C(N, n_plus) C(N - n_plus, n_minus) times the shared correlator value, so
    the cost is polynomial in N.  Multiplicities, the 2^-(N-q) weight and the
    correlator magnitude are combined in log space; for large N the raw
    factors overflow and underflow double precision individually while every
    assembled term stays below N^2.
    """
    n = state.n_atoms
    if n > max_atoms:
        raise ValueError(f"{n} atoms exceeds the symmetric-sum cap of {max_atoms}")
    a = state.amplitudes
    q_cap = n if max_order is None else min(max_order, n)
    total = 0.0
    with np.errstate(over="raise"):
        for n_plus in range(q_cap + 1):
            rest = n - n_plus
            j_top = min(rest, q_cap - n_plus)
            if j_top < 0:
                continue
            j = np.arange(j_top + 1)[:, None]        # lowering-set sizes
            f = np.arange(rest + 1)[None, :]         # up spins on untouched sites
            valid = f <= rest - j
            fc = np.minimum(f, rest - np.minimum(j, rest))
            ln_ratio = np.where(
                valid,
                _ln_binom(rest - j, fc) - 0.5 * (_ln_binom(n, fc + n_plus) + _ln_binom(n, fc + j)),
                -np.inf,
            )
            shift = ln_ratio.max(axis=1, keepdims=True)
            scaled = np.where(valid & (shift > -np.inf),
                              np.exp(ln_ratio - shift), 0.0)
            z = np.conj(a[np.minimum(fc + n_plus, n)]) * a[np.minimum(fc + j, n)]
            t_scaled = np.sum(scaled * np.where(valid, z, 0.0), axis=1)
            mag = np.abs(t_scaled)
            ok = mag > 0.0
            q = n_plus + j[:, 0]
            ln_term = np.where(
                ok,
                _ln_binom(n, n_plus) + _ln_binom(rest, j[:, 0])
                - (n - q) * LN2 + 2.0 * (shift[:, 0] + np.log(np.where(ok, mag, 1.0))),
                -np.inf,
            )
            diff_sq = (n_plus - j[:, 0]).astype(float) ** 2
            terms = np.where(ok & (diff_sq > 0), diff_sq * np.exp(
                np.where(ok, ln_term, -np.inf)), 0.0)
            if not np.all(np.isfinite(terms)):
                raise FloatingPointError("overflow assembling the symmetric correlator sum")
            total += float(terms.sum())
    return 2.0 * total
