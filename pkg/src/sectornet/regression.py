"""Standardized simple OLS with classical inference.

Both variables are standardized (mean 0, sample std 1 with divisor N-1)
before fitting, so the slope equals the sample correlation, the intercept
vanishes, and R^2 equals the squared slope. Standard errors are classical
homoskedastic OLS; p-values come from the Student-t distribution with N-2
degrees of freedom, two-sided, evaluated through the regularized
incomplete beta function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .errors import DegenerateError


@dataclass(frozen=True)
class RegressionFit:
    """OLS estimates for one size metric, with t-statistics and p-values."""

    metric: str
    n_obs: int
    beta0: float
    beta1: float
    se0: float
    se1: float
    t0: float
    t1: float
    p0: float
    p1: float
    r_squared: float
    degenerate: bool = False  # |beta1| = 1: infinite t, p reported as 0


def standardize(v: np.ndarray) -> np.ndarray:
    """Center and scale to sample std 1 (divisor N-1).

    Raises DegenerateError for a constant vector.
    """
    v = np.asarray(v, dtype=float)
    if len(v) < 2:
        raise DegenerateError("need at least 2 observations to standardize")
    std = v.std(ddof=1)
    if std == 0.0:
        raise DegenerateError("zero variance: cannot standardize a constant vector")
    return (v - v.mean()) / std


def students_t_sf(t: float, df: int) -> float:
    """Two-sided p-value P(|T_df| >= |t|) via the regularized incomplete beta."""
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    t = float(t)
    if math.isinf(t):
        return 0.0
    return float(betainc(df / 2.0, 0.5, df / (df + t * t)))


def ols_fit(y: np.ndarray, x: np.ndarray, metric: str = "") -> RegressionFit:
    """Fit y = beta0 + beta1 x by least squares on standardized inputs.

    Inputs must be standardized, paired, and of length >= 3 (sectors with
    missing fundamentals are dropped before standardizing). A perfect fit
    (|beta1| = 1 up to rounding) is flagged degenerate with p1 = 0.
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if len(y) != len(x):
        raise ValueError(f"length mismatch: {len(y)} vs {len(x)}")
    n = len(y)
    if n < 3:
        raise ValueError("need at least 3 paired observations")
    sxx = float(((x - x.mean()) ** 2).sum())
    sxy = float(((x - x.mean()) * (y - y.mean())).sum())
    beta1 = sxy / sxx
    beta0 = float(y.mean() - beta1 * x.mean())
    resid = y - beta0 - beta1 * x
    rss = float((resid**2).sum())
    tss = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 - rss / tss
    df = n - 2
    s2 = rss / df
    se1 = math.sqrt(s2 / sxx)
    se0 = math.sqrt(s2 * (1.0 / n + x.mean() ** 2 / sxx))
    degenerate = se1 == 0.0
    if degenerate:
        t1 = math.inf if beta1 > 0 else -math.inf
        p1 = 0.0
    else:
        t1 = beta1 / se1
        p1 = students_t_sf(t1, df)
    if se0 == 0.0:
        t0, p0 = 0.0, 1.0
    else:
        t0 = beta0 / se0
        p0 = students_t_sf(t0, df)
    return RegressionFit(
        metric=metric,
        n_obs=n,
        beta0=beta0,
        beta1=beta1,
        se0=se0,
        se1=se1,
        t0=t0,
        t1=t1,
        p0=p0,
        p1=p1,
        r_squared=r_squared,
        degenerate=degenerate,
    )


def regress_centrality_on_metric(
    centrality: np.ndarray,
    metric_values: list[float | None],
    metric: str,
) -> RegressionFit:
    """Listwise-drop sectors with a missing metric, standardize both sides, fit."""
    keep = [k for k, v in enumerate(metric_values) if v is not None]
    if len(keep) < 3:
        raise DegenerateError(
            f"metric {metric!r}: only {len(keep)} sectors with data, need >= 3"
        )
    y = standardize(np.asarray(centrality, dtype=float)[keep])
    x = standardize(np.array([metric_values[k] for k in keep], dtype=float))
    return ols_fit(y, x, metric=metric)


TABLE_HEADER = "country,metric,period,beta0,beta1,t1,p1,r_squared,n_obs"


def fits_to_csv(rows: list[tuple[str, str, RegressionFit]]) -> str:
    """Serialize (country, period, fit) rows in the reference table layout."""
    lines = [TABLE_HEADER]
    for country, period, fit in rows:
        lines.append(
            f"{country},{fit.metric},{period},{fit.beta0!r},{fit.beta1!r},"
            f"{fit.t1!r},{fit.p1!r},{fit.r_squared!r},{fit.n_obs}"
        )
    return "\n".join(lines) + "\n"
