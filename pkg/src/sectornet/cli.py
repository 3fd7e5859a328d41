"""Command-line pipeline: ingest -> corr -> centrality -> mst -> mds ->
regress -> portfolio -> coremap, plus `run` for the whole chain.

Each stage reads the artifacts of earlier stages from the output
directory, so stages can be rerun independently. `run` additionally
writes manifest.json recording every parameter that affects any output;
reruns with an identical config produce bitwise-identical artifacts.

Exit codes: 0 success, 1 usage error, 2 data/validation error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .centrality import ThetaFormula, centrality_report, report_from_dict, report_to_dict
from .coremap import sweep_n, sweep_to_csv
from .core import PanelData, PanelKind, validate_panel
from .embedding import embedding_to_csv, mds_embed
from .errors import (
    ConvergenceError,
    InfeasibleError,
    NumericalError,
    PipelineError,
    ReducibleMatrixError,
    SectornetError,
)
from .ingestion import (
    MissingPolicy,
    aggregate_fundamentals,
    load_fundamentals,
    load_prices,
    load_returns,
    to_log_returns,
    write_panel_csv,
)
from .network import (
    absolute_matrix,
    elementwise_power,
    pearson_correlation,
    read_matrix_csv,
    write_matrix_csv,
)
from .core import CorrelationNet, SectorId
from .portfolio import covariance, min_variance_weights, solution_from_dict, solution_to_dict
from .regression import fits_to_csv, regress_centrality_on_metric
from .spanning_tree import minimum_spanning_tree, tree_to_dot

_NUMERICAL_ERRORS = (ConvergenceError, ReducibleMatrixError, NumericalError, InfeasibleError)

DEFAULT_N_VALUES = tuple(float(n) for n in range(1, 11))


@dataclass
class PipelineConfig:
    """Every knob that can affect an artifact; recorded verbatim in the manifest."""

    prices: str
    fundamentals: str | None = None
    out_dir: str = "out"
    market: str = "MARKET"
    power: int = 32
    n_pct: float = 2.0
    theta_formula: str = "std"
    missing_policy: str = "drop_row"
    seed: int = 0
    theta: float = 0.0
    n_values: tuple[float, ...] = DEFAULT_N_VALUES
    centrality_matrix: str = "abs"  # which centrality feeds the regressions
    date_start: str | None = None
    date_end: str | None = None
    mds_max_iter: int = 1000
    mds_tol: float = 1e-9


class _DependencyError(SectornetError):
    pass


def _require(path: Path) -> Path:
    if not path.exists():
        raise _DependencyError(
            f"missing artifact {path}; run the producing stage first"
        )
    return path


def _theta_formula(config) -> ThetaFormula:
    return ThetaFormula(config.theta_formula)


def _load_price_panel(config) -> PanelData:
    if not config.prices or not Path(config.prices).exists():
        raise _DependencyError(f"prices file {config.prices!r} not found")
    panel = load_prices(config.prices, MissingPolicy(config.missing_policy))
    if config.date_start or config.date_end:
        start = dt.date.fromisoformat(config.date_start) if config.date_start else dt.date.min
        end = dt.date.fromisoformat(config.date_end) if config.date_end else dt.date.max
        keep = [k for k, d in enumerate(panel.dates) if start <= d <= end]
        panel = PanelData(
            dates=tuple(panel.dates[k] for k in keep),
            sectors=panel.sectors,
            values=panel.values[keep],
            kind=PanelKind.PRICES,
        )
    findings = validate_panel(panel)
    if findings:
        raise SectornetError(
            "invalid price panel: " + "; ".join(str(f) for f in findings)
        )
    return panel


def stage_ingest(config) -> Path:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    returns = to_log_returns(_load_price_panel(config))
    path = out / "returns.csv"
    write_panel_csv(returns, path)
    return path


def _read_returns(config) -> PanelData:
    out = Path(config.out_dir)
    path = out / "returns.csv"
    if not path.exists():
        stage_ingest(config)
    return load_returns(path)


def stage_corr(config) -> list[Path]:
    out = Path(config.out_dir)
    net = pearson_correlation(_read_returns(config))
    write_matrix_csv(out / "rho.csv", net.codes, net.rho)
    write_matrix_csv(out / "dist.csv", net.codes, net.dist)
    return [out / "rho.csv", out / "dist.csv"]


def _read_net(config) -> CorrelationNet:
    out = Path(config.out_dir)
    codes, rho = read_matrix_csv(_require(out / "rho.csv"))
    return CorrelationNet(sectors=tuple(SectorId(code=c) for c in codes), rho=rho)


def stage_centrality(config) -> Path:
    out = Path(config.out_dir)
    net = _read_net(config)
    formula = _theta_formula(config)
    reports = {
        "abs": centrality_report(
            net.sectors, absolute_matrix(net), "abs_rho", config.n_pct, formula
        ),
        "power": centrality_report(
            net.sectors,
            elementwise_power(net, config.power),
            f"rho_power_{config.power}",
            config.n_pct,
            formula,
        ),
    }
    path = out / "centrality.json"
    path.write_text(
        json.dumps(
            {k: report_to_dict(r) for k, r in reports.items()}, indent=2, sort_keys=True
        )
        + "\n"
    )
    return path


def _read_centrality(config) -> dict:
    out = Path(config.out_dir)
    raw = json.loads(_require(out / "centrality.json").read_text())
    return {k: report_from_dict(v) for k, v in raw.items()}


def stage_mst(config) -> Path:
    out = Path(config.out_dir)
    net = _read_net(config)
    # core labels follow the elementwise-power centrality, which is the
    # variant built for core extraction
    core = _read_centrality(config)["power"].core
    tree = minimum_spanning_tree(net)
    path = out / "mst.dot"
    path.write_text(tree_to_dot(tree, core))
    return path


def stage_mds(config) -> Path:
    out = Path(config.out_dir)
    net = _read_net(config)
    result = mds_embed(net, seed=config.seed, max_iter=config.mds_max_iter, tol=config.mds_tol)
    path = out / "mds.csv"
    path.write_text(embedding_to_csv(result))
    return path


def stage_regress(config) -> Path:
    out = Path(config.out_dir)
    if not config.fundamentals or not Path(config.fundamentals).exists():
        raise _DependencyError(f"fundamentals file {config.fundamentals!r} not found")
    report = _read_centrality(config)[config.centrality_matrix]
    records = load_fundamentals(config.fundamentals)
    aggregates = aggregate_fundamentals(records, known_sectors=list(report.sectors))
    by_code = {f.sector.code: f for f in aggregates}
    period = f"{config.date_start or 'begin'}..{config.date_end or 'end'}"
    rows = []
    for metric in ("market_cap", "revenue", "employees"):
        values = [
            getattr(by_code[s.code], metric) if s.code in by_code else None
            for s in report.sectors
        ]
        fit = regress_centrality_on_metric(report.x, values, metric)
        rows.append((config.market, period, fit))
    path = out / "regressions.csv"
    path.write_text(fits_to_csv(rows))
    return path


def stage_portfolio(config) -> Path:
    out = Path(config.out_dir)
    returns = _read_returns(config)
    sigma = covariance(returns)
    expected = returns.values.mean(axis=0)
    sol = min_variance_weights(
        sigma, theta=config.theta, expected_returns=expected, sectors=returns.sectors
    )
    path = out / "portfolio.json"
    path.write_text(json.dumps(solution_to_dict(sol), indent=2, sort_keys=True) + "\n")
    return path


def stage_coremap(config) -> Path:
    out = Path(config.out_dir)
    report = _read_centrality(config)["power"]
    sol_raw = json.loads(_require(out / "portfolio.json").read_text())
    sol = solution_from_dict(sol_raw)
    result = sweep_n(
        report.x,
        sol.weights,
        config.n_values,
        sectors=report.sectors,
        formula=_theta_formula(config),
    )
    path = out / "coremap.csv"
    path.write_text(sweep_to_csv(result))
    return path


PIPELINE_STAGES = (
    ("ingest", stage_ingest),
    ("corr", stage_corr),
    ("centrality", stage_centrality),
    ("mst", stage_mst),
    ("mds", stage_mds),
    ("regress", stage_regress),
    ("portfolio", stage_portfolio),
    ("coremap", stage_coremap),
)


def run_pipeline(config: PipelineConfig) -> dict:
    """Run every stage in order and write manifest.json.

    Artifacts of completed stages are retained even if a later stage
    fails; failures surface as PipelineError naming the stage.
    """
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, stage in PIPELINE_STAGES:
        try:
            stage(config)
        except Exception as exc:
            raise PipelineError(name, exc) from exc
    manifest = {"version": __version__, "config": asdict(config)}
    manifest["config"]["n_values"] = list(config.n_values)
    sol = json.loads((out / "portfolio.json").read_text())
    manifest["derived"] = {"ridge_epsilon": sol["ridge_epsilon"]}
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    return manifest


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sectornet", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--prices", help="prices CSV (date,<CODE>,... header)")
    common.add_argument("--fundamentals", help="fundamentals CSV")
    common.add_argument(
        "--out-dir",
        default=os.environ.get("SECTORNET_OUT_ROOT", "out"),
        help="artifact directory (env SECTORNET_OUT_ROOT overrides the default)",
    )
    common.add_argument("--market", default="MARKET", help="market label for tables")
    common.add_argument("--power", type=int, default=32, help="even exponent c for rho^c")
    common.add_argument("--n-pct", type=float, default=2.0, help="threshold percentage n")
    common.add_argument("--theta-formula", choices=["std", "cv"], default="std")
    common.add_argument(
        "--missing-policy", choices=["drop_row", "forward_fill"], default="drop_row"
    )
    common.add_argument("--seed", type=int, default=0, help="seed for the MDS fallback start")
    common.add_argument("--theta", type=float, default=0.0, help="risk appetite parameter")
    common.add_argument(
        "--n-values",
        default=",".join(str(n) for n in DEFAULT_N_VALUES),
        help="comma-separated percentages for the coremap sweep",
    )
    common.add_argument(
        "--centrality-matrix", choices=["abs", "power"], default="abs",
        help="which centrality feeds the regressions",
    )
    common.add_argument("--date-start", help="inclusive ISO date window start")
    common.add_argument("--date-end", help="inclusive ISO date window end")
    common.add_argument("--mds-max-iter", type=int, default=1000)
    common.add_argument("--mds-tol", type=float, default=1e-9)

    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("ingest", "parse prices, apply the missing-data policy, write returns.csv"),
        ("corr", "write rho.csv and dist.csv"),
        ("centrality", "write centrality.json (|rho| and rho^c reports)"),
        ("mst", "write mst.dot with core annotation"),
        ("mds", "write mds.csv coordinates"),
        ("regress", "write regressions.csv (one row per size metric)"),
        ("portfolio", "write portfolio.json (minimum-variance weights)"),
        ("coremap", "write coremap.csv (n vs Hamming distance sweep)"),
        ("run", "run the full pipeline and write manifest.json"),
    ]:
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def config_from_args(args) -> PipelineConfig:
    return PipelineConfig(
        prices=args.prices,
        fundamentals=args.fundamentals,
        out_dir=args.out_dir,
        market=args.market,
        power=args.power,
        n_pct=args.n_pct,
        theta_formula=args.theta_formula,
        missing_policy=args.missing_policy,
        seed=args.seed,
        theta=args.theta,
        n_values=tuple(float(v) for v in args.n_values.split(",") if v),
        centrality_matrix=args.centrality_matrix,
        date_start=args.date_start,
        date_end=args.date_end,
        mds_max_iter=args.mds_max_iter,
        mds_tol=args.mds_tol,
    )


_COMMANDS = {name: stage for name, stage in PIPELINE_STAGES}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = config_from_args(args)
    try:
        if args.command == "run":
            run_pipeline(config)
        else:
            _COMMANDS[args.command](config)
    except PipelineError as exc:
        print(f"sectornet: {exc}", file=sys.stderr)
        return 3 if isinstance(exc.cause, _NUMERICAL_ERRORS) else 2
    except _NUMERICAL_ERRORS as exc:
        print(f"sectornet: {exc}", file=sys.stderr)
        return 3
    except (SectornetError, ValueError, OSError) as exc:
        print(f"sectornet: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
