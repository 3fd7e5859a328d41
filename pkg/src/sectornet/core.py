"""Shared domain types and the sector-index discipline.

Every matrix and vector produced downstream is indexed by the same ordered
sector list; permuting input columns permutes all outputs consistently.
All types are immutable after construction (arrays are marked read-only),
so they can be shared across threads without synchronization.
"""

from __future__ import annotations

import datetime as dt
import enum
import math
from dataclasses import dataclass, field

import numpy as np


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SectorId:
    """A sector identifier: short uppercase code plus a free-text name."""

    code: str
    name: str = ""

    def __post_init__(self):
        if not self.code:
            raise ValueError("sector code must be non-empty")


class PanelKind(enum.Enum):
    PRICES = "prices"
    LOG_RETURNS = "log_returns"


@dataclass(frozen=True)
class PanelData:
    """An aligned date-by-sector matrix of prices or log-returns.

    Attributes
    ----------
    dates : tuple of datetime.date
        Strictly increasing observation dates.
    sectors : tuple of SectorId
        Column order; duplicates are invalid.
    values : ndarray, shape (len(dates), len(sectors))
        Prices in index points, or dimensionless log-returns.
    kind : PanelKind
    """

    dates: tuple[dt.date, ...]
    sectors: tuple[SectorId, ...]
    values: np.ndarray
    kind: PanelKind

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        object.__setattr__(self, "sectors", tuple(self.sectors))
        object.__setattr__(self, "values", _freeze(self.values))
        if self.values.shape != (len(self.dates), len(self.sectors)):
            raise ValueError(
                f"values shape {self.values.shape} does not match "
                f"{len(self.dates)} dates x {len(self.sectors)} sectors"
            )

    @property
    def codes(self) -> list[str]:
        return [s.code for s in self.sectors]


@dataclass(frozen=True)
class SectorFundamentals:
    """Sector-level aggregates; None marks a metric missing for the sector."""

    sector: SectorId
    market_cap: float | None = None
    revenue: float | None = None
    employees: float | None = None

    def __post_init__(self):
        if self.market_cap is None and self.revenue is None and self.employees is None:
            raise ValueError(
                f"sector {self.sector.code!r}: at least one metric must be present"
            )
        for name in ("market_cap", "revenue", "employees"):
            v = getattr(self, name)
            if v is not None and (not math.isfinite(v) or v < 0):
                raise ValueError(f"sector {self.sector.code!r}: {name}={v} invalid")


@dataclass(frozen=True)
class CorrelationNet:
    """Symmetric correlation matrix with its derived distance matrix.

    dist[i, j] = sqrt(2 * (1 - rho[i, j])), so dist maps correlation 1 -> 0
    and -1 -> 2; both matrices share the sector index.
    """

    sectors: tuple[SectorId, ...]
    rho: np.ndarray
    dist: np.ndarray = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "sectors", tuple(self.sectors))
        rho = np.asarray(self.rho, dtype=float)
        n = len(self.sectors)
        if rho.shape != (n, n):
            raise ValueError(f"rho shape {rho.shape} does not match {n} sectors")
        if self.dist is None:
            object.__setattr__(self, "dist", distance_from_rho(rho))
        object.__setattr__(self, "rho", _freeze(rho))
        object.__setattr__(self, "dist", _freeze(self.dist))

    @property
    def n(self) -> int:
        return len(self.sectors)

    @property
    def codes(self) -> list[str]:
        return [s.code for s in self.sectors]


def distance_from_rho(rho: np.ndarray) -> np.ndarray:
    """Map correlations to distances via d = sqrt(2 * (1 - rho))."""
    d = np.sqrt(np.maximum(2.0 * (1.0 - np.asarray(rho, dtype=float)), 0.0))
    np.fill_diagonal(d, 0.0)
    return d


@dataclass(frozen=True)
class ValidationFinding:
    """One invariant violation, with the offending coordinates."""

    message: str
    row: int | None = None
    col: int | None = None

    def __str__(self):
        loc = ""
        if self.row is not None or self.col is not None:
            loc = f" at (row={self.row}, col={self.col})"
        return self.message + loc


def validate_panel(panel: PanelData) -> list[ValidationFinding]:
    """Check every PanelData invariant; return one finding per violation.

    Returns an empty list iff the panel is well-formed. Findings carry
    row/column coordinates where applicable; nothing is raised.
    """
    findings = []
    for t in range(1, len(panel.dates)):
        if panel.dates[t] <= panel.dates[t - 1]:
            findings.append(
                ValidationFinding(
                    f"dates not strictly increasing: {panel.dates[t - 1]} -> {panel.dates[t]}",
                    row=t,
                )
            )
    seen: dict[str, int] = {}
    for k, s in enumerate(panel.sectors):
        if s.code in seen:
            findings.append(
                ValidationFinding(f"duplicate sector {s.code!r}", col=k)
            )
        seen.setdefault(s.code, k)
    if panel.kind is PanelKind.PRICES and len(panel.dates) < 2:
        findings.append(
            ValidationFinding("price panel needs at least 2 dates for returns")
        )
    bad = np.argwhere(~np.isfinite(panel.values))
    for t, i in bad:
        findings.append(
            ValidationFinding("non-finite value", row=int(t), col=int(i))
        )
    return findings
