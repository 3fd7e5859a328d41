"""Correlation matrix construction and elementwise transforms.

Correlations use population moments (sample means over the window, 1/T
normalization); the normalization cancels in the correlation coefficient
but is fixed here for reproducibility. Computed coefficients are clamped
to [-1, 1] before the distance transform; a clamp beyond 1 + 1e-9 is
treated as a numerical failure rather than rounding noise.
"""

from __future__ import annotations

import numpy as np

from .core import CorrelationNet, PanelData, PanelKind
from .errors import (
    DegenerateSeriesError,
    DomainError,
    InvalidExponentError,
    NumericalError,
)

_CLAMP_GUARD = 1e-9


def pearson_correlation(returns: PanelData) -> CorrelationNet:
    """Build the equal-time correlation network from a log-return panel.

    rho[i, j] = (<r_i r_j> - <r_i><r_j>) / (std_i * std_j) with <.> the
    sample mean over the window; the distance matrix is derived as
    d = sqrt(2 * (1 - rho)).

    Raises
    ------
    DomainError
        Fewer than 3 return observations, or panel is not log-returns.
    DegenerateSeriesError
        A sector has zero sample variance (reported by sector code).
    """
    if returns.kind is not PanelKind.LOG_RETURNS:
        raise DomainError("pearson_correlation expects a log-return panel")
    if len(returns.dates) < 3:
        raise DomainError("need at least 3 return observations")
    r = returns.values
    mean = r.mean(axis=0)
    centered = r - mean
    var = (centered**2).mean(axis=0)
    for i, v in enumerate(var):
        if v <= 0.0:
            raise DegenerateSeriesError(returns.sectors[i].code)
    cov = centered.T @ centered / r.shape[0]
    std = np.sqrt(var)
    rho = cov / np.outer(std, std)
    overshoot = np.max(np.abs(rho)) - 1.0
    if overshoot > _CLAMP_GUARD:
        raise NumericalError(f"correlation overshoots 1 by {overshoot:.3e}")
    rho = np.clip(rho, -1.0, 1.0)
    rho = (rho + rho.T) / 2.0
    np.fill_diagonal(rho, 1.0)
    return CorrelationNet(sectors=returns.sectors, rho=rho)


def elementwise_power(net: CorrelationNet, c: int = 32) -> np.ndarray:
    """Raise each correlation entrywise to the c-th power (c even, c >= 2).

    Even powers kill the sign and push weak correlations towards zero while
    keeping the diagonal at exactly 1.
    """
    if not isinstance(c, (int, np.integer)) or c < 2 or c % 2 != 0:
        raise InvalidExponentError(f"exponent must be a positive even integer, got {c!r}")
    out = net.rho**c
    np.fill_diagonal(out, 1.0)
    return out


def absolute_matrix(net: CorrelationNet) -> np.ndarray:
    """Entrywise absolute value of the correlation matrix."""
    return np.abs(net.rho)


def write_matrix_csv(path, codes: list[str], matrix: np.ndarray) -> None:
    """Write a square matrix as CSV with sector codes as row/column headers.

    Values are written with repr precision so a round-trip is bit-exact.
    """
    matrix = np.asarray(matrix, dtype=float)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("," + ",".join(codes) + "\n")
        for code, row in zip(codes, matrix):
            fh.write(code + "," + ",".join(repr(float(v)) for v in row) + "\n")


def read_matrix_csv(path) -> tuple[list[str], np.ndarray]:
    """Read a matrix written by write_matrix_csv; returns (codes, matrix)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
        codes = header[1:]
        rows = []
        for line in fh:
            parts = line.rstrip("\n").split(",")
            rows.append([float(v) for v in parts[1:]])
    return codes, np.array(rows, dtype=float)
