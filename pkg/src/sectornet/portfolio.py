"""No-short-sale minimum-variance portfolio via active-set QP.

Minimizes w' Sigma w - theta R' w subject to sum(w) = 1, w >= 0. The
primal active-set method terminates exactly on small N and yields a clean
KKT certificate: a multiplier mu with (2 Sigma w - theta R)_i = mu on the
support and >= mu elsewhere. A ridge eps * I is added when Sigma is close
to singular; eps is recorded in the solution.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import PanelData, PanelKind, SectorId
from .errors import DomainError, NumericalError

_RIDGE_TRIGGER = 1e-12
_RIDGE_SCALE = 1e-10
KKT_SLACK = 1e-8


@dataclass(frozen=True)
class PortfolioSolution:
    sectors: tuple[SectorId, ...]
    weights: np.ndarray
    variance: float
    theta: float
    active: np.ndarray  # weight strictly positive in the QP solution
    kkt_multiplier: float
    ridge_epsilon: float


def covariance(returns: PanelData) -> np.ndarray:
    """Sample covariance of the return panel, population (1/T) convention.

    Tiny negative eigenvalues from rounding (>= -1e-10) are clamped to 0.
    """
    if returns.kind is not PanelKind.LOG_RETURNS:
        raise DomainError("covariance expects a log-return panel")
    r = returns.values
    if r.shape[0] < 2:
        raise DomainError("need at least 2 return observations")
    centered = r - r.mean(axis=0)
    sigma = centered.T @ centered / r.shape[0]
    sigma = (sigma + sigma.T) / 2.0
    evals = np.linalg.eigvalsh(sigma)
    if evals[0] < -1e-10:
        raise NumericalError(f"covariance has eigenvalue {evals[0]:.3e} < -1e-10")
    if evals[0] < 0.0:
        w, v = np.linalg.eigh(sigma)
        sigma = (v * np.clip(w, 0.0, None)) @ v.T
        sigma = (sigma + sigma.T) / 2.0
    return sigma


def _solve_active(sigma, theta, r_vec, active):
    """Equality-constrained solve on the active set: returns (w_active, mu)."""
    idx = np.nonzero(active)[0]
    k = len(idx)
    kkt = np.zeros((k + 1, k + 1))
    kkt[:k, :k] = 2.0 * sigma[np.ix_(idx, idx)]
    kkt[:k, k] = -1.0
    kkt[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[:k] = theta * r_vec[idx]
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular KKT system on active set: {exc}") from exc
    return sol[:k], sol[k]


def min_variance_weights(
    sigma: np.ndarray,
    theta: float = 0.0,
    expected_returns: np.ndarray | None = None,
    sectors: tuple[SectorId, ...] | None = None,
) -> PortfolioSolution:
    """Solve the simplex-constrained quadratic program.

    expected_returns is only consulted when theta != 0. The returned
    certificate holds with slack KKT_SLACK: the gradient equals the
    multiplier on active coordinates and is >= multiplier - slack on
    inactive ones.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = sigma.shape[0]
    if sigma.shape != (n, n):
        raise ValueError(f"covariance must be square, got {sigma.shape}")
    if not np.allclose(sigma, sigma.T):
        raise ValueError("covariance must be symmetric")
    if sectors is None:
        sectors = tuple(SectorId(code=f"S{i}") for i in range(n))
    r_vec = (
        np.zeros(n) if expected_returns is None else np.asarray(expected_returns, dtype=float)
    )

    scale = np.trace(sigma) / n
    eps = 0.0
    if scale <= 0.0 or np.linalg.eigvalsh(sigma)[0] < _RIDGE_TRIGGER * max(scale, 1.0):
        eps = _RIDGE_SCALE * max(scale, 1.0)
        sigma = sigma + eps * np.eye(n)

    w = np.full(n, 1.0 / n)
    active = np.ones(n, dtype=bool)
    mu = 0.0
    for _ in range(100 + 10 * n * n):
        w_eq = np.zeros(n)
        w_eq[active], mu = _solve_active(sigma, theta, r_vec, active)
        neg = active & (w_eq < -1e-14)
        if neg.any():
            # step towards the equality solution until a weight hits zero
            delta = w_eq - w
            ratios = np.where(delta < 0, -w / np.where(delta < 0, delta, -1.0), np.inf)
            alpha = min(1.0, float(ratios[active].min()))
            w = w + alpha * delta
            hit = active & (w <= 1e-14)
            w[hit] = 0.0
            active &= ~hit
            if not active.any():
                raise NumericalError("active set emptied; constraints inconsistent")
            continue
        w = np.where(w_eq > 0, w_eq, 0.0)
        grad = 2.0 * sigma @ w - theta * r_vec
        violation = (~active) & (grad < mu - 1e-12 * max(1.0, abs(mu)))
        if not violation.any():
            variance = float(w @ sigma @ w)
            return PortfolioSolution(
                sectors=tuple(sectors),
                weights=w,
                variance=variance,
                theta=theta,
                active=w > 0.0,
                kkt_multiplier=float(mu),
                ridge_epsilon=eps,
            )
        entering = int(np.nonzero(violation)[0][np.argmin(grad[violation])])
        active[entering] = True
    raise NumericalError("active-set iteration cap reached")


def solution_to_dict(sol: PortfolioSolution) -> dict:
    return {
        "sectors": [s.code for s in sol.sectors],
        "weights": [float(v) for v in sol.weights],
        "variance": sol.variance,
        "theta": sol.theta,
        "active": [bool(b) for b in sol.active],
        "kkt_multiplier": sol.kkt_multiplier,
        "ridge_epsilon": sol.ridge_epsilon,
    }


def solution_to_json(sol: PortfolioSolution) -> str:
    return json.dumps(solution_to_dict(sol), indent=2, sort_keys=True)


def solution_from_dict(d: dict) -> PortfolioSolution:
    return PortfolioSolution(
        sectors=tuple(SectorId(code=c) for c in d["sectors"]),
        weights=np.array(d["weights"], dtype=float),
        variance=float(d["variance"]),
        theta=float(d["theta"]),
        active=np.array(d["active"], dtype=bool),
        kkt_multiplier=float(d["kkt_multiplier"]),
        ridge_epsilon=float(d["ridge_epsilon"]),
    )
