"""Matrix-free Lanczos solver for the lowest eigenpair of a symmetric operator.

Full reorthogonalization is used throughout: at the dimensions this package
targets (up to 2^19) the Krylov bases are short, and exact orthogonality is
worth far more than the saved inner products.  When the basis reaches
`restart_dim` the iteration restarts from the current Ritz vector.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import eigh_tridiagonal


class ConvergenceError(RuntimeError):
    """Raised when the iteration exhausts its budget without converging."""


def lowest_eigenpair(matvec, dim: int, *, v0: np.ndarray | None = None,
                     tol: float = 1e-10, max_iter: int = 2000,
                     restart_dim: int = 200) -> tuple[float, np.ndarray, int]:
    """Smallest eigenvalue and eigenvector of a symmetric operator.

    Parameters
    ----------
    matvec : callable mapping a length-`dim` vector to the operator image.
    v0 : starting vector; defaults to the normalized all-ones vector, which is
        deterministic and has positive overlap with any Perron-Frobenius-type
        ground state.
    tol : convergence threshold on the Ritz residual, scaled by max(1, |theta|).
    max_iter : total matvec budget across restarts.
    restart_dim : Krylov basis size at which the iteration restarts.

    Returns (eigenvalue, eigenvector, matvecs_used).
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    if dim == 1:
        e = float(matvec(np.ones(1))[0])
        return e, np.ones(1), 1

    if v0 is None:
        v = np.full(dim, 1.0 / np.sqrt(dim))
    else:
        v = np.asarray(v0, dtype=float).copy()
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise ValueError("starting vector is zero")
        v /= nrm

    used = 0
    block = int(min(restart_dim, dim))
    while used < max_iter:
        basis = np.empty((block + 1, dim))
        basis[0] = v
        alphas: list[float] = []
        betas: list[float] = []
        k = 0
        while k < block and used < max_iter:
            w = matvec(basis[k])
            used += 1
            alphas.append(float(basis[k] @ w))
            w = w - alphas[-1] * basis[k]
            if k > 0:
                w -= betas[-1] * basis[k - 1]
            # full reorthogonalization, twice for numerical safety
            w -= basis[: k + 1].T @ (basis[: k + 1] @ w)
            w -= basis[: k + 1].T @ (basis[: k + 1] @ w)
            beta = float(np.linalg.norm(w))

            theta, ritz = _tridiag_ground(alphas, betas)
            residual = abs(beta * ritz[-1])
            if beta < 1e-13 or residual < tol * max(1.0, abs(theta)):
                x = basis[: k + 1].T @ ritz
                x /= np.linalg.norm(x)
                return theta, x, used
            if k + 1 >= dim:
                break           # Krylov space exhausted; restart cannot help
            betas.append(beta)
            basis[k + 1] = w / beta
            k += 1
        theta, ritz = _tridiag_ground(alphas, betas)
        v = basis[: len(alphas)].T @ ritz
        v /= np.linalg.norm(v)
    raise ConvergenceError(f"no convergence within {max_iter} iterations (tol={tol:g})")


def _tridiag_ground(alphas, betas) -> tuple[float, np.ndarray]:
    if len(alphas) == 1:
        return float(alphas[0]), np.ones(1)
    vals, vecs = eigh_tridiagonal(np.asarray(alphas), np.asarray(betas[: len(alphas) - 1]),
                                  select="i", select_range=(0, 0))
    return float(vals[0]), vecs[:, 0]
