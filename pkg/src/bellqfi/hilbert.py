"""N-qubit Hilbert-space machinery on a bit-indexed basis.

Conventions, fixed once for the whole package:

* Basis index ``b`` encodes one product state of eigenstates of the
  single-qubit operator along the generator axis; bit ``k`` of ``b`` is 1
  when qubit ``k`` points up along that axis.  Qubit 0 is the least
  significant bit.
* With this ordering a single-qubit state vector is ``[amp(down), amp(up)]``,
  so the Pauli matrix along the quantisation axis is ``diag(-1, +1)``.
* Phases are fixed by requiring a right-handed axis triad and
  ``sigma_plus |down> = |up>`` with coefficient exactly 1, which forces
  ``sigma_y |up> = +i |down>``.

All operations are pure functions on immutable inputs and are safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._bits import mask_of, popcount, popcount_table

MAX_PURE_QUBITS = 24    # 2^24 complex amplitudes = 256 MiB
MAX_DENSE_QUBITS = 12   # dense density matrices beyond this exhaust memory

NORM_TOL = 1e-12

# Single-qubit Pauli matrices in the bit-index basis (index 0 = down, 1 = up).
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, 1.0j], [-1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)
SIGMA_PLUS = 0.5 * (SIGMA_X + 1j * SIGMA_Y)
SIGMA_MINUS = 0.5 * (SIGMA_X - 1j * SIGMA_Y)


def dimension(n_qubits: int) -> int:
    return 1 << n_qubits


@dataclass
class PureState:
    """Complex amplitude vector over the 2^N bit-indexed basis."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("need at least one qubit")
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (dimension(self.n_qubits),):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({dimension(self.n_qubits)},)"
            )
        self.amplitudes = amps

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def require_normalized(self, tol: float = NORM_TOL) -> None:
        err = abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0)
        if err > tol:
            raise ValueError(f"state is not normalized: |<psi|psi> - 1| = {err:.3e}")


@dataclass
class DensityMatrix:
    """Hermitian, unit-trace matrix over the same bit-indexed basis (small N only)."""

    n_qubits: int
    elements: np.ndarray

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("need at least one qubit")
        if self.n_qubits > MAX_DENSE_QUBITS:
            raise ValueError(f"density matrices are limited to {MAX_DENSE_QUBITS} qubits")
        mat = np.asarray(self.elements, dtype=np.complex128)
        dim = dimension(self.n_qubits)
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix has shape {mat.shape}, expected ({dim}, {dim})")
        self.elements = mat

    @classmethod
    def from_pure(cls, state: PureState) -> "DensityMatrix":
        psi = state.amplitudes
        return cls(state.n_qubits, np.outer(psi, psi.conj()))

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityMatrix":
        dim = dimension(n_qubits)
        return cls(n_qubits, np.eye(dim, dtype=complex) / dim)

    def check(self, tol: float = NORM_TOL, psd_tol: float = 1e-10) -> None:
        """Validate hermiticity, unit trace and positive semi-definiteness."""
        mat = self.elements
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > tol:
            raise ValueError(f"matrix is not Hermitian: max deviation {herm:.3e}")
        tr = abs(float(np.trace(mat).real) - 1.0)
        if tr > tol:
            raise ValueError(f"trace differs from 1 by {tr:.3e}")
        lo = float(np.linalg.eigvalsh(mat)[0])
        if lo < -psd_tol:
            raise ValueError(f"matrix has negative eigenvalue {lo:.3e}")


@dataclass(frozen=True)
class SpinTriad:
    """Right-handed orthonormal frame (xi1, xi2, xi); xi is the generator axis."""

    xi: np.ndarray
    xi1: np.ndarray
    xi2: np.ndarray

    def __post_init__(self):
        for name in ("xi", "xi1", "xi2"):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
            if abs(np.linalg.norm(vec) - 1.0) > NORM_TOL:
                raise ValueError(f"{name} is not unit length")
            object.__setattr__(self, name, vec)
        if abs(self.xi @ self.xi1) > NORM_TOL or abs(self.xi @ self.xi2) > NORM_TOL \
                or abs(self.xi1 @ self.xi2) > NORM_TOL:
            raise ValueError("triad axes are not mutually orthogonal")
        if np.max(np.abs(np.cross(self.xi1, self.xi2) - self.xi)) > NORM_TOL:
            raise ValueError("triad is not right-handed (xi1 x xi2 != xi)")

    @classmethod
    def z(cls) -> "SpinTriad":
        return cls(np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))

    @classmethod
    def x(cls) -> "SpinTriad":
        return cls(np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]))

    @classmethod
    def y(cls) -> "SpinTriad":
        return cls(np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))

    @classmethod
    def from_xi(cls, axis) -> "SpinTriad":
        """Complete an arbitrary unit vector to a right-handed triad."""
        xi = np.asarray(axis, dtype=float)
        xi = xi / np.linalg.norm(xi)
        helper = np.array([0.0, 0.0, 1.0]) if abs(xi[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
        xi1 = np.cross(helper, xi)
        xi1 /= np.linalg.norm(xi1)
        xi2 = np.cross(xi, xi1)
        return cls(xi, xi1, xi2)

    def is_z(self) -> bool:
        return bool(
            np.array_equal(self.xi, [0.0, 0.0, 1.0])
            and np.array_equal(self.xi1, [1.0, 0.0, 0.0])
            and np.array_equal(self.xi2, [0.0, 1.0, 0.0])
        )


def pauli_matrix(axis) -> np.ndarray:
    """2x2 Pauli matrix for 'x' / 'y' / 'z' or an arbitrary unit 3-vector."""
    if isinstance(axis, str):
        try:
            return {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}[axis]
        except KeyError:
            raise ValueError(f"unknown axis {axis!r}") from None
    vec = np.asarray(axis, dtype=float)
    if vec.shape != (3,):
        raise ValueError("axis must be 'x', 'y', 'z' or a 3-vector")
    if abs(np.linalg.norm(vec) - 1.0) > NORM_TOL:
        raise ValueError("axis vector must be unit length")
    return vec[0] * SIGMA_X + vec[1] * SIGMA_Y + vec[2] * SIGMA_Z


def apply_qubit_matrix(matrix: np.ndarray, site: int, amplitudes: np.ndarray,
                       n_qubits: int) -> np.ndarray:
    """Apply a 2x2 matrix to one qubit of an amplitude array (axis 0 indexes the basis)."""
    if not 0 <= site < n_qubits:
        raise ValueError(f"site {site} out of range for {n_qubits} qubits")
    hi = dimension(n_qubits) >> (site + 1)
    work = amplitudes.reshape(hi, 2, -1)
    down, up = work[:, 0], work[:, 1]
    out = np.empty_like(work)
    out[:, 0] = matrix[0, 0] * down + matrix[0, 1] * up
    out[:, 1] = matrix[1, 0] * down + matrix[1, 1] * up
    return out.reshape(amplitudes.shape)


def pauli_apply(axis, site: int, state: PureState) -> PureState:
    """Apply a single-qubit Pauli operator; norm is preserved."""
    n = state.n_qubits
    if not 0 <= site < n:
        raise ValueError(f"site {site} out of range for {n} qubits")
    state.require_normalized()
    psi = state.amplitudes
    mask = 1 << site
    if isinstance(axis, str) and axis in ("x", "y", "z"):
        bit = (np.arange(dimension(n), dtype=np.int64) & mask) != 0
        if axis == "z":
            out = np.where(bit, psi, -psi)
        else:
            flipped = _flip_bit(psi, site, n)
            if axis == "x":
                out = flipped
            else:
                # target with bit 0 receives +i * amp(up source), bit 1 receives -i
                out = np.where(bit, -1j * flipped, 1j * flipped)
        return PureState(n, out)
    return PureState(n, apply_qubit_matrix(pauli_matrix(axis), site, psi, n))


def _flip_bit(amplitudes: np.ndarray, site: int, n_qubits: int) -> np.ndarray:
    hi = dimension(n_qubits) >> (site + 1)
    return amplitudes.reshape(hi, 2, -1)[:, ::-1, :].reshape(amplitudes.shape)


def generator_eigenvalue(bits: int, n_qubits: int) -> float:
    """Eigenvalue of the collective generator on basis state `bits`: n_up - N/2."""
    if not 0 <= bits < dimension(n_qubits):
        raise ValueError(f"basis index {bits} out of range")
    return popcount(bits) - n_qubits / 2


def collective_generator_apply(state: PureState, triad: SpinTriad | None = None) -> PureState:
    """Apply h = (1/2) sum_k sigma_xi^(k).

    With the default triad (or None) the generator is diagonal in the stored
    basis and each amplitude is scaled by popcount(b) - N/2.
    """
    n = state.n_qubits
    if triad is None or triad.is_z():
        weights = popcount_table(n) - n / 2
        return PureState(n, state.amplitudes * weights)
    sigma = pauli_matrix(triad.xi)
    acc = np.zeros_like(state.amplitudes)
    for k in range(n):
        acc += apply_qubit_matrix(sigma, k, state.amplitudes, n)
    return PureState(n, 0.5 * acc)


def ladder_apply(state: PureState, s_plus, s_minus) -> PureState:
    """Apply the product of raising operators on `s_plus` and lowering on `s_minus`.

    Returns the (generally un-normalized) image: basis state b survives iff
    every `s_plus` bit of b is 0 and every `s_minus` bit is 1, and maps to b
    with those bits flipped, with coefficient 1.
    """
    n = state.n_qubits
    mp = mask_of(s_plus)
    mm = mask_of(s_minus)
    if mp & mm:
        raise ValueError("raising and lowering site sets overlap")
    if (mp | mm) >> n:
        raise ValueError(f"site out of range for {n} qubits")
    psi = state.amplitudes
    b = np.arange(dimension(n), dtype=np.int64)
    keep = ((b & mp) == 0) & ((b & mm) == mm)
    out = np.zeros_like(psi)
    out[b[keep] ^ (mp | mm)] = psi[keep]
    return PureState(n, out)


def ghz_state(n_qubits: int, max_qubits: int = MAX_PURE_QUBITS) -> PureState:
    """Equal superposition of all-up and all-down."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    if n_qubits > max_qubits:
        raise ValueError(f"{n_qubits} qubits exceeds the configured cap of {max_qubits}")
    amps = np.zeros(dimension(n_qubits), dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return PureState(n_qubits, amps)


def product_plus_state(n_qubits: int, max_qubits: int = MAX_PURE_QUBITS) -> PureState:
    """Product of single-qubit (up + down)/sqrt(2) states: uniform amplitudes."""
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    if n_qubits > max_qubits:
        raise ValueError(f"{n_qubits} qubits exceeds the configured cap of {max_qubits}")
    amps = np.full(dimension(n_qubits), 2.0 ** (-n_qubits / 2), dtype=np.complex128)
    return PureState(n_qubits, amps)


def spin_flip_apply(state: PureState) -> PureState:
    """Apply the global spin flip (product of sigma_x over all qubits)."""
    return PureState(state.n_qubits, state.amplitudes[::-1].copy())


def fix_global_phase(amplitudes: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude amplitude is real positive."""
    i = int(np.argmax(np.abs(amplitudes)))
    pivot = amplitudes[i]
    if pivot == 0:
        return amplitudes
    return amplitudes * (abs(pivot) / pivot)


def qubit_rotation(triad: SpinTriad) -> np.ndarray:
    """Single-qubit unitary u with u+ sigma_xi u = sigma_z etc. for the triad.

    Columns of u are the down/up eigenvectors of sigma_xi, with the relative
    phase fixed so that (sigma_xi1 + i sigma_xi2)/2 maps exactly to sigma_plus.
    """
    s_xi = pauli_matrix(triad.xi)
    _, vecs = np.linalg.eigh(s_xi)
    down, up = vecs[:, 0], vecs[:, 1]     # eigenvalues sorted ascending: -1, +1
    w = 0.5 * (pauli_matrix(triad.xi1) + 1j * pauli_matrix(triad.xi2))
    gamma = complex(up.conj() @ w @ down)
    down = down / gamma                    # |gamma| = 1 for a valid triad
    u = np.column_stack([down, up])
    return u


def to_generator_basis(obj, triad: SpinTriad):
    """Re-express a PureState or DensityMatrix in the eigenbasis of the triad axis."""
    if triad.is_z():
        return obj
    u = qubit_rotation(triad)
    w = u.conj().T
    if isinstance(obj, PureState):
        amps = obj.amplitudes
        for k in range(obj.n_qubits):
            amps = apply_qubit_matrix(w, k, amps, obj.n_qubits)
        return PureState(obj.n_qubits, amps)
    if isinstance(obj, DensityMatrix):
        mat = obj.elements
        for k in range(obj.n_qubits):
            mat = apply_qubit_matrix(w, k, mat, obj.n_qubits)
        mat = mat.conj().T
        for k in range(obj.n_qubits):
            mat = apply_qubit_matrix(w, k, mat, obj.n_qubits)
        return DensityMatrix(obj.n_qubits, mat.conj().T)
    raise TypeError(f"cannot rotate object of type {type(obj).__name__}")


def random_pure_state(n_qubits: int, rng: np.random.Generator,
                      real: bool = False) -> PureState:
    dim = dimension(n_qubits)
    amps = rng.normal(size=dim)
    if not real:
        amps = amps + 1j * rng.normal(size=dim)
    amps = amps.astype(np.complex128)
    amps /= np.linalg.norm(amps)
    return PureState(n_qubits, amps)


def random_density_matrix(n_qubits: int, rng: np.random.Generator,
                          rank: int | None = None) -> DensityMatrix:
    dim = dimension(n_qubits)
    if rank is None:
        rank = int(rng.integers(1, dim + 1))
    block = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = block @ block.conj().T
    rho /= np.trace(rho).real
    return DensityMatrix(n_qubits, rho)
