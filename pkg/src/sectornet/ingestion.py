"""Parsing of price / fundamentals CSV files and panel transforms.

File formats (see docs/file-formats.md for the bit-exact reference):

* prices CSV: header ``date,<CODE1>,<CODE2>,...``; ISO-8601 dates; decimal
  point ``.``; UTF-8; an empty cell marks a missing price.
* fundamentals CSV: header ``company,sector,market_cap,revenue,employees``;
  an empty cell marks a missing metric.
"""

from __future__ import annotations

import csv
import datetime as dt
import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import PanelData, PanelKind, SectorFundamentals, SectorId
from .errors import DomainError, ParseError, SchemaError, UnknownSectorError


class MissingPolicy(enum.Enum):
    """How dates with missing prices are handled.

    DROP_ROW removes the whole date whenever any sector price is missing
    (listwise deletion), keeping all pairwise correlation estimates on a
    common date set. FORWARD_FILL carries the last seen price forward;
    leading dates with no prior observation are dropped.
    """

    DROP_ROW = "drop_row"
    FORWARD_FILL = "forward_fill"


@dataclass(frozen=True)
class CompanyRecord:
    """One company row from the fundamentals file; None marks a missing metric."""

    company: str
    sector: SectorId
    market_cap: float | None = None
    revenue: float | None = None
    employees: float | None = None


def load_prices(path, policy: MissingPolicy = MissingPolicy.DROP_ROW) -> PanelData:
    """Parse a prices CSV into a PanelData(kind=PRICES).

    Column order is preserved from the file header. Missing cells are
    resolved per `policy` before the panel is built.

    Raises
    ------
    SchemaError
        Header lacks the date column, has no sector columns, or repeats a
        sector code.
    ParseError
        A malformed row (wrong field count, bad date); carries line number.
    ValueError
        A non-numeric price cell.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if not header or header[0].strip() != "date":
            raise SchemaError(f"{path}: first header column must be 'date'")
        codes = [c.strip() for c in header[1:]]
        if not codes:
            raise SchemaError(f"{path}: no sector columns")
        if len(set(codes)) != len(codes):
            dup = sorted({c for c in codes if codes.count(c) > 1})
            raise SchemaError(f"{path}: duplicate sector column(s) {dup}")

        dates: list[dt.date] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(codes) + 1:
                raise ParseError(
                    f"expected {len(codes) + 1} fields, got {len(row)}", line=lineno
                )
            try:
                date = dt.date.fromisoformat(row[0].strip())
            except ValueError:
                raise ParseError(f"bad date {row[0]!r}", line=lineno) from None
            values = []
            for code, cell in zip(codes, row[1:]):
                cell = cell.strip()
                if cell == "":
                    values.append(math.nan)
                    continue
                try:
                    values.append(float(cell))
                except ValueError:
                    raise ValueError(
                        f"line {lineno}: non-numeric price {cell!r} for sector {code}"
                    ) from None
            dates.append(date)
            rows.append(values)

    if not rows:
        raise SchemaError(f"{path}: no data rows")
    values = np.array(rows, dtype=float)
    dates, values = _apply_missing_policy(dates, values, policy)
    sectors = tuple(SectorId(code=c) for c in codes)
    return PanelData(dates=tuple(dates), sectors=sectors, values=values, kind=PanelKind.PRICES)


def _apply_missing_policy(dates, values, policy):
    missing = np.isnan(values)
    if policy is MissingPolicy.DROP_ROW:
        keep = ~missing.any(axis=1)
    elif policy is MissingPolicy.FORWARD_FILL:
        for i in range(values.shape[1]):
            last = math.nan
            for t in range(values.shape[0]):
                if math.isnan(values[t, i]):
                    values[t, i] = last
                else:
                    last = values[t, i]
        keep = ~np.isnan(values).any(axis=1)
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown policy {policy}")
    return [d for d, k in zip(dates, keep) if k], values[keep]


def to_log_returns(panel: PanelData) -> PanelData:
    """Convert a price panel to daily log-returns ln P(t) - ln P(t-1).

    The output has one row fewer than the input and carries the later date
    of each pair. Multiplying all prices of one sector by a positive
    constant leaves its returns unchanged up to rounding.

    Raises
    ------
    DomainError
        A price is zero or negative (log-return undefined), or fewer than
        two dates are available.
    """
    if panel.kind is not PanelKind.PRICES:
        raise DomainError("to_log_returns expects a price panel")
    if len(panel.dates) < 2:
        raise DomainError("need at least 2 dates to compute returns")
    bad = np.argwhere(panel.values <= 0)
    if bad.size:
        t, i = bad[0]
        raise DomainError(
            f"non-positive price {panel.values[t, i]} at date {panel.dates[t]}, "
            f"sector {panel.sectors[i].code}"
        )
    logp = np.log(panel.values)
    returns = logp[1:] - logp[:-1]
    return PanelData(
        dates=panel.dates[1:],
        sectors=panel.sectors,
        values=returns,
        kind=PanelKind.LOG_RETURNS,
    )


def write_panel_csv(panel: PanelData, path) -> None:
    """Write a panel in the prices-CSV layout; values at repr precision."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("date," + ",".join(panel.codes) + "\n")
        for date, row in zip(panel.dates, panel.values):
            fh.write(date.isoformat() + "," + ",".join(repr(float(v)) for v in row) + "\n")


def load_returns(path) -> PanelData:
    """Read a log-return panel written by write_panel_csv."""
    panel = load_prices(path)
    return PanelData(
        dates=panel.dates,
        sectors=panel.sectors,
        values=panel.values,
        kind=PanelKind.LOG_RETURNS,
    )


def load_fundamentals(path) -> list[CompanyRecord]:
    """Parse a fundamentals CSV into company records (empty cell = missing)."""
    expected = ["company", "sector", "market_cap", "revenue", "employees"]
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [c.strip() for c in next(reader)]
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if header != expected:
            raise SchemaError(f"{path}: header must be {','.join(expected)}")
        records = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                raise ParseError(f"expected 5 fields, got {len(row)}", line=lineno)
            company, sector = row[0].strip(), row[1].strip()
            if not sector:
                raise ParseError("empty sector code", line=lineno)
            metrics = []
            for name, cell in zip(expected[2:], row[2:]):
                cell = cell.strip()
                if cell == "":
                    metrics.append(None)
                    continue
                try:
                    metrics.append(float(cell))
                except ValueError:
                    raise ParseError(
                        f"non-numeric {name} {cell!r}", line=lineno
                    ) from None
            records.append(
                CompanyRecord(
                    company=company,
                    sector=SectorId(code=sector),
                    market_cap=metrics[0],
                    revenue=metrics[1],
                    employees=metrics[2],
                )
            )
    return records


def aggregate_fundamentals(
    records: list[CompanyRecord],
    known_sectors: list[SectorId] | None = None,
) -> list[SectorFundamentals]:
    """Sum company metrics into per-sector aggregates.

    A sector metric is the sum over companies where that metric is present,
    and is missing iff it is missing for every company in the sector.
    Record order does not affect the result; output follows
    `known_sectors` order when given, else first-appearance order.

    Raises
    ------
    UnknownSectorError
        `known_sectors` is given and a record references a sector outside it.
    """
    if not records:
        raise ValueError("records must be non-empty")
    known = None
    if known_sectors is not None:
        known = {s.code: s for s in known_sectors}
    totals: dict[str, dict[str, float | None]] = {}
    order: list[SectorId] = []
    for rec in records:
        code = rec.sector.code
        if known is not None and code not in known:
            raise UnknownSectorError(
                f"company {rec.company!r} references unknown sector {code!r}"
            )
        if code not in totals:
            totals[code] = {"market_cap": None, "revenue": None, "employees": None}
            order.append(known[code] if known is not None else rec.sector)
        for name in ("market_cap", "revenue", "employees"):
            v = getattr(rec, name)
            if v is not None:
                prev = totals[code][name]
                totals[code][name] = v if prev is None else prev + v
    if known_sectors is not None:
        order = [s for s in known_sectors if s.code in totals]
    return [SectorFundamentals(sector=s, **totals[s.code]) for s in order]
