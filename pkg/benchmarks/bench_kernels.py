"""Benchmark the compiled kernels against the pure-numpy fallback.

The kernel path is fixed at import time by SECTORNET_DISABLE_NUMBA, so
this script re-runs itself in a subprocess with the flag set and prints a
side-by-side table.

Usage: python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def bench_power_iteration(repeats):
    from sectornet._kernels import power_iteration_kernel

    rng = np.random.default_rng(1)
    B = rng.uniform(0.02, 1.0, (40, 40))
    A = (B + B.T) / 2
    x0 = np.full(40, 1.0 / 40)
    power_iteration_kernel(A, x0, 1e-12, 100_000)  # warm-up / JIT compile
    best = min(
        _timed(power_iteration_kernel, A, x0, 1e-12, 100_000) for _ in range(repeats)
    )
    return best


def bench_smacof(repeats):
    from sectornet._kernels import smacof_kernel

    rng = np.random.default_rng(2)
    pts = rng.uniform(-1, 1, (60, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    delta = np.sqrt((diff**2).sum(axis=-1)) * 1.2
    X0 = rng.uniform(-1, 1, (60, 2))
    smacof_kernel(delta, X0.copy(), 300, 1e-12)  # warm-up / JIT compile
    best = min(
        _timed(smacof_kernel, delta, X0.copy(), 300, 1e-12) for _ in range(repeats)
    )
    return best


def _timed(fn, *args):
    start = time.perf_counter()
    fn(*args)
    return time.perf_counter() - start


def run(repeats):
    from sectornet._kernels import NUMBA_ENABLED

    return {
        "numba": NUMBA_ENABLED,
        "power_iteration_s": bench_power_iteration(repeats),
        "smacof_s": bench_smacof(repeats),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--json", action="store_true", help="print raw JSON and exit")
    args = parser.parse_args()

    results = run(args.repeats)
    if args.json:
        print(json.dumps(results))
        return

    env = dict(os.environ, SECTORNET_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, __file__, "--repeats", str(args.repeats), "--json"],
        env=env,
        check=True,
        capture_output=True,
        text=True,
    )
    fallback = json.loads(out.stdout)
    assert results["numba"] and not fallback["numba"]

    print(f"{'kernel':<18}{'numba (s)':>12}{'fallback (s)':>14}{'speedup':>10}")
    for key, label in [
        ("power_iteration_s", "power_iteration"),
        ("smacof_s", "smacof"),
    ]:
        jit, py = results[key], fallback[key]
        print(f"{label:<18}{jit:>12.6f}{py:>14.6f}{py / jit:>10.1f}x")


if __name__ == "__main__":
    main()
