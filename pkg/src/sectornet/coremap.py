"""Centrality / portfolio bit-strings and their normalized Hamming distance.

Both bit-strings use the same dispersion-threshold family and the same
percentage n: a bit is 1 iff the value lies strictly above its threshold
(boundary ties label periphery / excluded). The distance D is normalized
by the string length, so complete disagreement gives D = 1; the raw-count
variant is available behind a flag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .centrality import ThetaFormula, threshold_value
from .core import SectorId
from .errors import LengthMismatchError


@dataclass(frozen=True)
class BitStringPair:
    sectors: tuple[SectorId, ...]
    evc_bits: np.ndarray  # centrality above theta_e
    pwt_bits: np.ndarray  # portfolio weight above theta_p
    n_pct: float
    theta_e: float
    theta_p: float


def make_bitstrings(
    x: np.ndarray,
    w: np.ndarray,
    n_pct: float,
    sectors: tuple[SectorId, ...] | None = None,
    formula: ThetaFormula = ThetaFormula.STD,
) -> BitStringPair:
    """Threshold the centrality vector and the weight vector with the same n."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    if len(x) != len(w):
        raise LengthMismatchError(f"centrality has {len(x)} entries, weights {len(w)}")
    if sectors is None:
        sectors = tuple(SectorId(code=f"S{i}") for i in range(len(x)))
    theta_e = threshold_value(x, n_pct, formula)
    theta_p = threshold_value(w, n_pct, formula)
    return BitStringPair(
        sectors=tuple(sectors),
        evc_bits=x > theta_e if theta_e > 0 else np.zeros(len(x), dtype=bool),
        pwt_bits=w > theta_p if theta_p > 0 else np.zeros(len(w), dtype=bool),
        n_pct=n_pct,
        theta_e=theta_e,
        theta_p=theta_p,
    )


def hamming_distance(a: np.ndarray, b: np.ndarray, normalized: bool = True) -> float:
    """Fraction (or raw count, if normalized=False) of differing positions."""
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    if len(a) != len(b):
        raise LengthMismatchError(f"length mismatch: {len(a)} vs {len(b)}")
    count = int(np.count_nonzero(a != b))
    return count / len(a) if normalized else float(count)


@dataclass(frozen=True)
class SweepResult:
    points: tuple[tuple[float, float], ...]  # (n, D) pairs
    best_n: float  # argmax D, smallest n on ties
    best_d: float


def sweep_n(
    x: np.ndarray,
    w: np.ndarray,
    n_values,
    sectors: tuple[SectorId, ...] | None = None,
    formula: ThetaFormula = ThetaFormula.STD,
) -> SweepResult:
    """Evaluate D over the requested threshold percentages."""
    n_values = list(n_values)
    if not n_values:
        raise ValueError("n_values must be non-empty")
    points = []
    for n in n_values:
        pair = make_bitstrings(x, w, n, sectors=sectors, formula=formula)
        points.append((float(n), hamming_distance(pair.evc_bits, pair.pwt_bits)))
    best_n, best_d = points[0]
    for n, d in points[1:]:
        if d > best_d or (d == best_d and n < best_n):
            best_n, best_d = n, d
    return SweepResult(points=tuple(points), best_n=best_n, best_d=best_d)


def sweep_to_csv(result: SweepResult) -> str:
    lines = ["n,D"]
    for n, d in result.points:
        lines.append(f"{n!r},{d!r}")
    return "\n".join(lines) + "\n"


def bitstrings_to_json(pair: BitStringPair) -> str:
    return json.dumps(
        {
            "sectors": [s.code for s in pair.sectors],
            "evc_bits": [int(b) for b in pair.evc_bits],
            "pwt_bits": [int(b) for b in pair.pwt_bits],
            "n_pct": pair.n_pct,
            "theta_e": pair.theta_e,
            "theta_p": pair.theta_p,
        },
        indent=2,
        sort_keys=True,
    )
