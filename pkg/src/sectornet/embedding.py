"""Planar embedding of the distance matrix by stress majorization.

The objective is raw stress sum_{i<j} (||y_i - y_j|| - d_ij)^2 in two
dimensions. Optimization is SMACOF-style majorization initialized from
classical MDS (double-centered squared distances, top-2 components); if
that initialization is degenerate (rank < 2) a seeded uniform random
configuration in [-1, 1]^2 is used instead. Majorization guarantees a
non-increasing stress at every iteration, and identical inputs plus seed
give bitwise-identical coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import CorrelationNet, SectorId
from ._kernels import smacof_kernel

DEFAULT_MAX_ITER = 1000
DEFAULT_TOL = 1e-9
_DIMENSIONS = 2


@dataclass(frozen=True)
class EmbeddingResult:
    sectors: tuple[SectorId, ...]
    coords: np.ndarray  # (N, 2)
    stress: float
    iterations: int
    converged: bool
    stress_history: np.ndarray  # stress before iteration 1, then per iteration


def classical_mds(dist: np.ndarray, dims: int = _DIMENSIONS) -> np.ndarray:
    """Torgerson initialization: eigendecompose -1/2 H d^2 H.

    Returns an (N, dims) configuration, or None if fewer than `dims`
    strictly positive eigenvalues exist.
    """
    n = dist.shape[0]
    h = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * h @ (dist**2) @ h
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    if np.sum(evals > 1e-12) < dims:
        return None
    return evecs[:, :dims] * np.sqrt(evals[:dims])


def stress_value(coords: np.ndarray, dist: np.ndarray) -> float:
    """Raw stress of a configuration against the target distances."""
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.sqrt((diff**2).sum(axis=-1))
    iu = np.triu_indices(dist.shape[0], k=1)
    return float(((d[iu] - dist[iu]) ** 2).sum())


def embed_distances(
    dist: np.ndarray,
    sectors: tuple[SectorId, ...] | None = None,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> EmbeddingResult:
    """Embed an arbitrary symmetric distance matrix in the plane.

    converged is True iff the relative stress decrease fell below `tol`
    before `max_iter`; otherwise the best configuration so far is returned
    with converged=False.
    """
    dist = np.asarray(dist, dtype=float)
    n = dist.shape[0]
    if n < 3:
        raise ValueError("need at least 3 points to embed")
    if sectors is None:
        sectors = tuple(SectorId(code=f"S{i}") for i in range(n))
    coords = classical_mds(dist)
    if coords is None:
        rng = np.random.default_rng(seed)
        coords = rng.uniform(-1.0, 1.0, size=(n, _DIMENSIONS))
    coords = np.ascontiguousarray(coords, dtype=float)
    coords, trace, iterations, converged = smacof_kernel(dist, coords, max_iter, tol)
    return EmbeddingResult(
        sectors=tuple(sectors),
        coords=np.asarray(coords),
        stress=float(trace[-1]),
        iterations=int(iterations),
        converged=bool(converged),
        stress_history=np.asarray(trace),
    )


def mds_embed(
    net: CorrelationNet,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> EmbeddingResult:
    """Embed the sectors of a correlation network by minimizing raw stress."""
    return embed_distances(
        net.dist, sectors=net.sectors, seed=seed, max_iter=max_iter, tol=tol
    )


def embedding_to_csv(result: EmbeddingResult) -> str:
    lines = ["sector,x,y"]
    for s, (x, y) in zip(result.sectors, result.coords):
        lines.append(f"{s.code},{float(x)!r},{float(y)!r}")
    return "\n".join(lines) + "\n"


def embedding_to_json(result: EmbeddingResult) -> str:
    return json.dumps(
        {
            "sectors": [s.code for s in result.sectors],
            "coords": [[float(x), float(y)] for x, y in result.coords],
            "stress": result.stress,
            "iterations": result.iterations,
            "converged": result.converged,
        },
        indent=2,
        sort_keys=True,
    )
