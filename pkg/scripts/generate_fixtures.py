"""Regenerate the bundled synthetic fixture under fixtures/.

Ten sectors driven by a one-factor return model whose loadings grow with
synthetic sector size, so centrality and size are positively related and
big sectors drop out of the minimum-variance portfolio. Deterministic:
rerunning this script reproduces the committed files byte for byte.
"""

import datetime as dt
from pathlib import Path

import numpy as np

SECTORS = ["FN", "IT", "ID", "BM", "CD", "CS", "TC", "UT", "EG", "HC"]
N_DAYS = 260
SEED = 20240315


def weekdays(start, count):
    out = []
    d = start
    while len(out) < count:
        if d.weekday() < 5:
            out.append(d)
        d += dt.timedelta(days=1)
    return out


def main():
    rng = np.random.default_rng(SEED)
    n = len(SECTORS)
    size = 80.0 * 1.55 ** np.arange(n)  # market caps, ascending
    loadings = 0.004 * size / size.mean()
    idio = 0.006
    factor = rng.standard_normal(N_DAYS)
    returns = factor[:, None] * loadings[None, :] + idio * rng.standard_normal((N_DAYS, n))
    prices = 100.0 * np.exp(np.cumsum(returns, axis=0))
    dates = weekdays(dt.date(2015, 1, 1), N_DAYS)

    root = Path(__file__).resolve().parent.parent / "fixtures"
    root.mkdir(exist_ok=True)

    with open(root / "prices.csv", "w", newline="") as fh:
        fh.write("date," + ",".join(SECTORS) + "\n")
        for d, row in zip(dates, prices):
            fh.write(d.isoformat() + "," + ",".join(f"{v:.6f}" for v in row) + "\n")

    with open(root / "fundamentals.csv", "w", newline="") as fh:
        fh.write("company,sector,market_cap,revenue,employees\n")
        for i, code in enumerate(SECTORS):
            n_comp = int(rng.integers(2, 5))
            shares = rng.dirichlet(np.ones(n_comp))
            for k, share in enumerate(shares):
                cap = size[i] * share
                revenue = cap * float(rng.uniform(0.5, 0.9))
                # the UT sector reports no headcount, exercising listwise drop
                if code == "UT":
                    employees = ""
                else:
                    employees = str(int(cap * float(rng.uniform(40, 60))))
                fh.write(f"{code} Corp {k + 1},{code},{cap:.4f},{revenue:.4f},{employees}\n")

    print("wrote", root / "prices.csv", "and", root / "fundamentals.csv")


if __name__ == "__main__":
    main()
