"""Hot numeric kernels, JIT-compiled with numba when available.

Set SECTORNET_DISABLE_NUMBA=1 to force the pure-numpy/Python fallback
(same functions, uncompiled). benchmarks/bench_kernels.py compares the
two paths. The kernel bodies are written loop-style so a single source
serves both paths.
"""

from __future__ import annotations

import os

import numpy as np


def _power_iteration_impl(A, x0, tol, max_iter):
    """Power iteration on a nonnegative matrix, x normalized to sum 1.

    Returns (x, iterations, converged); the eigenvalue is recovered by the
    caller via a Rayleigh quotient.
    """
    x = x0 / x0.sum()
    for it in range(max_iter):
        y = A @ x
        s = y.sum()
        y = y / s
        diff = np.max(np.abs(y - x))
        x = y
        if diff <= tol:
            return x, it + 1, True
    return x, max_iter, False


def _smacof_impl(delta, X, max_iter, tol):
    """Stress majorization for metric MDS.

    delta : (n, n) target distances; X : (n, q) start configuration.
    Returns (X, stress trace including the initial stress, iterations,
    converged). Stress is guaranteed non-increasing across iterations.
    """
    n = delta.shape[0]
    q = X.shape[1]
    X = X.copy()
    trace = np.empty(max_iter + 1)
    D = np.zeros((n, n))

    for i in range(n):
        for j in range(i + 1, n):
            s = 0.0
            for k in range(q):
                s += (X[i, k] - X[j, k]) ** 2
            D[i, j] = np.sqrt(s)
            D[j, i] = D[i, j]
    stress = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            stress += (D[i, j] - delta[i, j]) ** 2
    trace[0] = stress

    it = 0
    converged = False
    B = np.zeros((n, n))
    while it < max_iter:
        for i in range(n):
            B[i, i] = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    if D[i, j] > 0.0:
                        B[i, j] = -delta[i, j] / D[i, j]
                    else:
                        B[i, j] = 0.0
                    B[i, i] -= B[i, j]
        X = (B @ X) / n
        for i in range(n):
            for j in range(i + 1, n):
                s = 0.0
                for k in range(q):
                    s += (X[i, k] - X[j, k]) ** 2
                D[i, j] = np.sqrt(s)
                D[j, i] = D[i, j]
        new_stress = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                new_stress += (D[i, j] - delta[i, j]) ** 2
        it += 1
        trace[it] = new_stress
        if stress == 0.0 or (stress - new_stress) / stress < tol:
            converged = True
            stress = new_stress
            break
        stress = new_stress
    return X, trace[: it + 1], it, converged


NUMBA_ENABLED = os.environ.get("SECTORNET_DISABLE_NUMBA", "").lower() not in (
    "1",
    "true",
    "yes",
)

if NUMBA_ENABLED:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    power_iteration_kernel = njit(cache=True)(_power_iteration_impl)
    smacof_kernel = njit(cache=True)(_smacof_impl)
else:
    power_iteration_kernel = _power_iteration_impl
    smacof_kernel = _smacof_impl
