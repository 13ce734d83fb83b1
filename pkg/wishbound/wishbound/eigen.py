"""
Batched cyclic Jacobi eigensolver for small Hermitian matrices.

Every matrix of a (batch, Y, Y) stack is rotated at once: for each (p, q)
pair a diagonal phase makes a_pq real, then a real Jacobi rotation zeroes
it. Sweeps repeat until the off-diagonal Frobenius norm of every matrix is
at most OFF_DIAGONAL_TOLERANCE times its trace.
"""

import logging

import numpy as np

from .exceptions import ConvergenceFailure

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOLERANCE = 1e-12
MAX_SWEEPS = 50


def gram_matrices(h: np.ndarray) -> np.ndarray:
    """HH^H when M <= N, else H^H H; always the Y x Y Gram matrix."""
    h = np.asarray(h, dtype=complex)
    if h.ndim == 2:
        h = h[None]
    rows, cols = h.shape[-2:]
    h_conj = np.conj(np.swapaxes(h, -1, -2))
    return h @ h_conj if rows <= cols else h_conj @ h


def _off_diagonal_norm(a: np.ndarray) -> np.ndarray:
    diag = np.einsum('bii->bi', a)
    return np.sqrt(np.maximum(np.sum(np.abs(a) ** 2, axis=(1, 2)) - np.sum(np.abs(diag) ** 2, axis=1), 0.0))


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    apq = a[:, p, q]
    r = np.abs(apq)
    active = r > 0
    safe_r = np.where(active, r, 1.0)
    phase = np.where(active, apq / safe_r, 1.0)

    # a_pq -> r, a_qp -> r
    a[:, :, q] *= np.conj(phase)[:, None]
    a[:, q, :] *= phase[:, None]

    theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe_r)
    sign = np.where(theta >= 0, 1.0, -1.0)
    t = np.where(active, sign / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
    c = (1.0 / np.sqrt(t * t + 1.0))[:, None]
    s = t[:, None] * c

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q].copy()
    a[:, :, p] = c * col_p - s * col_q
    a[:, :, q] = s * col_p + c * col_q
    row_p = a[:, p, :].copy()
    row_q = a[:, q, :].copy()
    a[:, p, :] = c * row_p - s * row_q
    a[:, q, :] = s * row_p + c * row_q
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0


def hermitian_eigenvalues(matrices: np.ndarray) -> np.ndarray:
    """
    Eigenvalues of a stack of Hermitian matrices, sorted descending.

    Args:
        matrices: (batch, Y, Y) or (Y, Y) Hermitian array

    Returns:
        (batch, Y) real array, each row in decreasing order
    """
    a = np.array(matrices, dtype=complex, copy=True)
    if a.ndim == 2:
        a = a[None]
    size = a.shape[-1]
    trace = np.einsum('bii->b', a).real
    limit = OFF_DIAGONAL_TOLERANCE * np.abs(trace)
    for sweep in range(MAX_SWEEPS + 1):
        if np.all(_off_diagonal_norm(a) <= limit):
            logger.debug(f"Jacobi converged after {sweep} sweeps on {a.shape[0]} matrices")
            break
        if sweep == MAX_SWEEPS:
            raise ConvergenceFailure(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
        for p in range(size - 1):
            for q in range(p + 1, size):
                _rotate(a, p, q)
    eigenvalues = np.einsum('bii->bi', a).real
    return -np.sort(-eigenvalues, axis=1)


def channel_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Ordered eigenvalues of the Gram matrix of each channel in a (batch, M, N) stack."""
    return hermitian_eigenvalues(gram_matrices(h))
