"""Dominant-eigenvector centrality and binary core-periphery extraction.

The centrality vector is the Perron vector of a nonnegative symmetric
matrix (entrywise |rho| or an even elementwise power rho^c), normalized to
sum 1. Core membership is decided by a dispersion threshold: by default
theta = (n_pct / 100) * std(x); the raw coefficient-of-variation variant
theta = (n_pct / 100) * std(x) / mean(x) is selectable. Population (1/N)
standard deviation is used, matching the moment convention of the
correlation module. The formula in force is stamped into every report.
"""

from __future__ import annotations

import enum
import json
import warnings
from dataclasses import dataclass

import numpy as np

from .core import SectorId
from .errors import ConvergenceError, ReducibleMatrixError
from ._kernels import power_iteration_kernel

POWER_ITERATION_TOL = 1e-12
POWER_ITERATION_MAX_ITER = 100_000
DEFAULT_N_PCT = 2.0


class ThetaFormula(enum.Enum):
    STD = "std"  # theta = (n_pct/100) * std(x)
    CV = "cv"  # theta = (n_pct/100) * std(x) / mean(x)


@dataclass(frozen=True)
class CentralityReport:
    """Normalized centrality vector with its core-periphery labeling."""

    sectors: tuple[SectorId, ...]
    x: np.ndarray
    lambda_m: float
    matrix_kind: str  # "abs_rho" or "rho_power_<c>"
    core: np.ndarray
    theta_e: float
    n_pct: float
    theta_formula: ThetaFormula

    def __post_init__(self):
        object.__setattr__(self, "sectors", tuple(self.sectors))
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "core", np.asarray(self.core, dtype=bool))


def _check_irreducible(A: np.ndarray) -> bool:
    """True if the off-diagonal support graph is connected.

    A purely diagonal matrix returns False without error; the caller treats
    that as the degenerate uniform-spectrum case.
    """
    n = A.shape[0]
    if n == 1:
        return True
    support = (A > 0.0) & ~np.eye(n, dtype=bool)
    if not support.any():
        return False
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in np.nonzero(support[i])[0]:
            if not seen[j]:
                seen[j] = True
                stack.append(int(j))
    return bool(seen.all())


def eigenvector_centrality(
    A: np.ndarray,
    tol: float = POWER_ITERATION_TOL,
    max_iter: int = POWER_ITERATION_MAX_ITER,
) -> tuple[np.ndarray, float]:
    """Perron vector and dominant eigenvalue of a nonnegative symmetric matrix.

    Power iteration from the uniform start vector; the result x satisfies
    x > 0, sum(x) = 1 and ||A x - lambda x||_inf <= 1e-10 * lambda.

    Raises
    ------
    ReducibleMatrixError
        The support graph is disconnected (a zero row or block), so the
        Perron vector is not unique. A purely diagonal matrix is instead
        answered with the uniform vector and a warning, since the
        downstream contract (sum 1, positive) remains satisfiable.
    ConvergenceError
        Iteration cap reached before tolerance.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"matrix must be square, got {A.shape}")
    if (A < 0).any():
        raise ValueError("matrix must be nonnegative")
    if not np.allclose(A, A.T):
        raise ValueError("matrix must be symmetric")
    if not _check_irreducible(A):
        offdiag = A - np.diag(np.diag(A))
        if not offdiag.any():
            warnings.warn(
                "matrix is diagonal: eigenvalue has full multiplicity, "
                "returning the uniform vector",
                stacklevel=2,
            )
            return np.full(n, 1.0 / n), float(np.max(np.diag(A)))
        raise ReducibleMatrixError("support graph of the matrix is disconnected")
    x0 = np.full(n, 1.0 / n)
    # Gershgorin diagonal shift: iterating on A - sigma*I (same eigenvectors,
    # spectrum shifted down) keeps the matrix nonnegative while opening up the
    # convergence ratio, which is otherwise hopeless for near-diagonal inputs
    # such as high elementwise powers of weakly correlated matrices.
    offrow = A.sum(axis=1) - np.diag(A)
    sigma = max(0.0, float(np.min(np.diag(A) - offrow)))
    shifted = A - sigma * np.eye(n) if sigma > 0.0 else A
    x, _, converged = power_iteration_kernel(shifted, x0, tol, max_iter)
    if not converged:
        raise ConvergenceError(
            f"power iteration did not reach tol={tol} within {max_iter} iterations"
        )
    lam = float(x @ (A @ x) / (x @ x))
    return x, lam


def threshold_value(
    v: np.ndarray,
    n_pct: float = DEFAULT_N_PCT,
    formula: ThetaFormula = ThetaFormula.STD,
) -> float:
    """Dispersion threshold for core / active labeling.

    Emits a warning and returns the std-based value (zero) when the vector
    has no dispersion, in which case every element falls below threshold.
    """
    if n_pct <= 0:
        raise ValueError(f"n_pct must be positive, got {n_pct}")
    v = np.asarray(v, dtype=float)
    std = float(v.std())  # population std, ddof=0
    if std == 0.0:
        warnings.warn("zero dispersion: every element labeled below threshold", stacklevel=2)
        return 0.0
    if formula is ThetaFormula.STD:
        return (n_pct / 100.0) * std
    return (n_pct / 100.0) * std / float(v.mean())


def core_flags(
    x: np.ndarray,
    n_pct: float = DEFAULT_N_PCT,
    formula: ThetaFormula = ThetaFormula.STD,
) -> tuple[np.ndarray, float]:
    """Label sectors as core (x_i strictly above threshold) or periphery."""
    x = np.asarray(x, dtype=float)
    theta = threshold_value(x, n_pct, formula)
    if theta == 0.0:
        return np.zeros(len(x), dtype=bool), 0.0
    return x > theta, theta


def centrality_report(
    sectors,
    A: np.ndarray,
    matrix_kind: str,
    n_pct: float = DEFAULT_N_PCT,
    formula: ThetaFormula = ThetaFormula.STD,
) -> CentralityReport:
    """Run eigenvector_centrality + core_flags and bundle the result."""
    x, lam = eigenvector_centrality(A)
    core, theta = core_flags(x, n_pct, formula)
    return CentralityReport(
        sectors=tuple(sectors),
        x=x,
        lambda_m=lam,
        matrix_kind=matrix_kind,
        core=core,
        theta_e=theta,
        n_pct=n_pct,
        theta_formula=formula,
    )


def report_to_dict(report: CentralityReport) -> dict:
    return {
        "sectors": [s.code for s in report.sectors],
        "x": [float(v) for v in report.x],
        "lambda_m": report.lambda_m,
        "matrix_kind": report.matrix_kind,
        "core": [bool(b) for b in report.core],
        "theta_e": report.theta_e,
        "n_pct": report.n_pct,
        "theta_formula": report.theta_formula.value,
    }


def report_to_json(report: CentralityReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True)


def report_from_dict(d: dict) -> CentralityReport:
    return CentralityReport(
        sectors=tuple(SectorId(code=c) for c in d["sectors"]),
        x=np.array(d["x"], dtype=float),
        lambda_m=float(d["lambda_m"]),
        matrix_kind=d["matrix_kind"],
        core=np.array(d["core"], dtype=bool),
        theta_e=float(d["theta_e"]),
        n_pct=float(d["n_pct"]),
        theta_formula=ThetaFormula(d["theta_formula"]),
    )
