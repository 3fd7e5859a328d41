"""Independent oracles and synthetic generators shared by the test suite.

Everything here is deliberately naive (enumeration, two-pass formulas,
closed-form grids) and stays independent of the implementation paths it
checks.
"""

from __future__ import annotations

import datetime as dt

import numpy as np
from numba import njit

from sectornet import PanelData, PanelKind, SectorId


def make_panel(values, kind=PanelKind.LOG_RETURNS, codes=None):
    values = np.asarray(values, dtype=float)
    t, n = values.shape
    codes = codes or [f"S{i}" for i in range(n)]
    dates = [dt.date(2015, 1, 1) + dt.timedelta(days=k) for k in range(t)]
    return PanelData(
        dates=dates,
        sectors=tuple(SectorId(code=c) for c in codes),
        values=values,
        kind=kind,
    )


def one_factor_panel(seed, n=10, days=250):
    """One-factor return panel with loadings growing in synthetic size.

    Returns (panel, size) where size is the synthetic sector size vector.
    """
    rng = np.random.default_rng(seed)
    size = 80.0 * 1.55 ** np.arange(n) * rng.uniform(0.8, 1.25, n)
    loadings = 0.004 * size / size.mean()
    factor = rng.standard_normal(days)
    r = factor[:, None] * loadings[None, :] + 0.006 * rng.standard_normal((days, n))
    return make_panel(r), size


def pearson_two_pass(r):
    """Textbook two-pass correlation oracle (population moments)."""
    r = np.asarray(r, dtype=float)
    t, n = r.shape
    mean = r.sum(axis=0) / t
    rho = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            ci = r[:, i] - mean[i]
            cj = r[:, j] - mean[j]
            rho[i, j] = (ci * cj).sum() / np.sqrt((ci * ci).sum() * (cj * cj).sum())
    return rho


def covariance_two_pass(r):
    r = np.asarray(r, dtype=float)
    t, n = r.shape
    mean = r.sum(axis=0) / t
    cov = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            cov[i, j] = ((r[:, i] - mean[i]) * (r[:, j] - mean[j])).sum() / t
    return cov


def prufer_decode(seq, n):
    """Edges of the labeled tree encoded by a Prufer sequence of length n-2."""
    import heapq

    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def min_spanning_weight_by_enumeration(dist):
    """Exhaustive minimum over all n^(n-2) labeled spanning trees (Cayley)."""
    n = dist.shape[0]
    best = np.inf
    seq = [0] * (n - 2)
    while True:
        # ascending-order accumulation, the canonical order for an MST total
        total = sum(sorted(dist[a][b] for a, b in prufer_decode(seq, n)))
        if total < best:
            best = total
        # odometer increment over the n-ary sequence
        k = len(seq) - 1
        while k >= 0:
            seq[k] += 1
            if seq[k] < n:
                break
            seq[k] = 0
            k -= 1
        if k < 0:
            return best


@njit(cache=True)
def grid_min_variance(sigma, step_count):
    """Exact minimum of w' Sigma w over the 4-simplex grid with step 1/step_count.

    The innermost coordinate is minimized in closed form: a convex quadratic
    on a uniform grid attains its minimum at a grid neighbor of the
    continuous vertex or at an endpoint, so the result equals the full
    enumeration.
    """
    h = 1.0 / step_count
    alpha = sigma[2, 2] + sigma[3, 3] - 2.0 * sigma[2, 3]
    best = 1e300
    for i1 in range(step_count + 1):
        a = i1 * h
        for i2 in range(step_count + 1 - i1):
            b = i2 * h
            rem = step_count - i1 - i2
            s = rem * h
            u = np.array([a, b, 0.0, s])
            su = sigma @ u
            f0 = u @ su
            beta = 2.0 * (su[2] - su[3])
            if alpha > 0.0:
                k0 = int(np.floor(-beta / (2.0 * alpha) / h))
            else:
                k0 = 0 if beta >= 0.0 else rem
            for k in (k0, k0 + 1, 0, rem):
                if 0 <= k <= rem:
                    t = k * h
                    f = f0 + beta * t + alpha * t * t
                    if f < best:
                        best = f
    return best


def procrustes_residual(coords, reference):
    """RMS residual after optimal translation / rotation / reflection."""
    a = coords - coords.mean(axis=0)
    b = reference - reference.mean(axis=0)
    u, _, vt = np.linalg.svd(b.T @ a)
    rotation = (u @ vt).T
    scaled = a @ rotation
    return float(np.sqrt(((scaled - b) ** 2).mean()))


def pairwise_distances(points):
    diff = points[:, None, :] - points[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))
