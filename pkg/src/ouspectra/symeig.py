"""Dense symmetric eigensolver based on cyclic Jacobi rotations.

Kept dependency-free so the matrix model owns its numerical kernel end to
end; `numpy.linalg.eigh` is used only as an independent oracle in the tests.
When numba is installed the same rotation loop runs JIT-compiled; both paths
apply identical rotations in identical order.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergence, ShapeMismatch

# Rotations below this fraction of the matrix scale are skipped inside a
# sweep; convergence is decided on the total off-diagonal mass.
_SKIP_FRACTION = 1e-18

try:  # optional acceleration, same algorithm
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def _off_norm(a: np.ndarray) -> float:
    # summed directly over off-diagonal entries: the subtraction
    # ||a||^2 - ||diag||^2 cannot resolve mass below sqrt(eps)*scale
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _sweep_python(A: np.ndarray, V: np.ndarray, scale: float) -> None:
    n = A.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = A[p, q]
            if abs(apq) <= _SKIP_FRACTION * scale:
                continue
            tau = (A[q, q] - A[p, p]) / (2.0 * apq)
            if tau >= 0.0:
                t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            col_p = A[:, p].copy()
            col_q = A[:, q].copy()
            A[:, p] = c * col_p - s * col_q
            A[:, q] = s * col_p + c * col_q
            row_p = A[p, :].copy()
            row_q = A[q, :].copy()
            A[p, :] = c * row_p - s * row_q
            A[q, :] = s * row_p + c * row_q
            A[p, q] = 0.0
            A[q, p] = 0.0

            vp = V[:, p].copy()
            V[:, p] = c * vp - s * V[:, q]
            V[:, q] = s * vp + c * V[:, q]


if _HAVE_NUMBA:

    @_njit(cache=True)
    def _jacobi_kernel(A, V, scale, off_target, max_sweeps):  # pragma: no cover
        n = A.shape[0]
        for sweep in range(max_sweeps):
            off2 = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    off2 += 2.0 * A[i, j] * A[i, j]
            if np.sqrt(off2) <= off_target:
                return sweep
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if abs(apq) <= _SKIP_FRACTION * scale:
                        continue
                    tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                    if tau >= 0.0:
                        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    for i in range(n):
                        aip = A[i, p]
                        aiq = A[i, q]
                        A[i, p] = c * aip - s * aiq
                        A[i, q] = s * aip + c * aiq
                    for i in range(n):
                        api = A[p, i]
                        aqi = A[q, i]
                        A[p, i] = c * api - s * aqi
                        A[q, i] = s * api + c * aqi
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    for i in range(n):
                        vip = V[i, p]
                        viq = V[i, q]
                        V[i, p] = c * vip - s * viq
                        V[i, q] = s * vip + c * viq
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += 2.0 * A[i, j] * A[i, j]
        if np.sqrt(off2) <= off_target:
            return max_sweeps
        return -1


def jacobi_eigh(
    a: np.ndarray,
    off_tol: float = 1e-12,
    max_sweeps: int = 100,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius mass drops below
    ``off_tol * ||a||_F`` or the sweep budget is exhausted.  Returns
    eigenvalues in ascending order and the matching orthonormal eigenvector
    columns; column signs are fixed so the largest-magnitude entry of each
    eigenvector is positive, which makes the output reproducible.

    Raises NoConvergence if the budget is exceeded (not observed in practice:
    cyclic Jacobi converges quadratically) and ShapeMismatch for non-square
    or non-symmetric input.
    """
    A = np.array(a, dtype=float, copy=True)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    scale = float(np.linalg.norm(A))
    if not np.all(np.abs(A - A.T) <= 1e-12 * (1.0 + scale)):
        raise ShapeMismatch("matrix is not symmetric")
    A = 0.5 * (A + A.T)

    V = np.eye(n)
    if n == 1 or scale == 0.0:
        return _sorted_system(np.diag(A).copy(), V)

    if _HAVE_NUMBA:
        status = _jacobi_kernel(A, V, scale, off_tol * scale, max_sweeps)
        if status < 0:
            raise NoConvergence(f"off-diagonal mass above target after {max_sweeps} sweeps")
        return _sorted_system(np.diag(A).copy(), V)

    converged = _off_norm(A) <= off_tol * scale
    for _ in range(max_sweeps):
        if converged:
            break
        _sweep_python(A, V, scale)
        converged = _off_norm(A) <= off_tol * scale
    if not converged:
        raise NoConvergence(f"off-diagonal mass above target after {max_sweeps} sweeps")
    return _sorted_system(np.diag(A).copy(), V)


def _sorted_system(w: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(w, kind="stable")
    w = w[order]
    V = V[:, order]
    for j in range(V.shape[1]):
        k = int(np.argmax(np.abs(V[:, j])))
        if V[k, j] < 0.0:
            V[:, j] = -V[:, j]
    return w, V


def jacobi_eigvals(a: np.ndarray, off_tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    return jacobi_eigh(a, off_tol=off_tol, max_sweeps=max_sweeps)[0]
