"""Small dense symmetric linear algebra used by the solver."""
from __future__ import annotations

import numpy as np
from scipy.linalg import cho_factor, cho_solve


def is_positive_definite(H: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(H)
    except np.linalg.LinAlgError:
        return False
    return True


def solve_spd(H: np.ndarray, rhs: np.ndarray, max_doublings: int = 10):
    """Solve ``H x = rhs`` by Cholesky, adding a ridge ``mu I`` if it fails.

    Starts at ``mu = 1e-12 * trace(H)`` and doubles at most ``max_doublings``
    times. Returns ``(x, mu)``; raises ``LinAlgError`` if every attempt fails.
    """
    try:
        return cho_solve(cho_factor(H), rhs), 0.0
    except np.linalg.LinAlgError:
        pass
    d = H.shape[0]
    mu = 1e-12 * max(float(np.trace(H)), np.finfo(float).tiny)
    for _ in range(max_doublings + 1):
        try:
            return cho_solve(cho_factor(H + mu * np.eye(d)), rhs), mu
        except np.linalg.LinAlgError:
            mu *= 2.0
    raise np.linalg.LinAlgError("matrix is not positive definite even after ridge")


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-15, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending."""
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.array_equal(A, A.T):
        raise ValueError("matrix must be exactly symmetric")
    scale = np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(A, 1) ** 2))
        if off <= tol * scale or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J on rows/cols p, q
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
    return np.sort(np.diag(A))
