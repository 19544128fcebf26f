"""Command-line front end.

    cointkit report --config analysis.cfg --format json --out report.json
    cointkit johansen --data macro.csv --variables INFL,DF,M2,TCE,GDP --det-case 4
    cointkit simulate --dgp common-trend --alpha=-0.5,0 --beta=1,-1 --n 500 --seed 42 --out sim.csv

Exit codes: 0 success, 2 data or configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .errors import BadSpec, CointkitError, ConfigError
from .pipeline import PipelineConfig, emit_report, read_config_file, run_pipeline
from .simulate import DgpSpec, parse_matrix, simulate_panel, to_csv

SUBCOMMAND_SECTIONS = {
    "adf": ("adf",),
    "johansen": ("johansen",),
    "vecm": ("vecm", "diagnostics"),
    "fevd": ("fevd",),
    "stats": ("stats",),
    "report": ("adf", "johansen", "vecm", "diagnostics", "fevd", "stats"),
}

# CLI destination -> config key
_FLAG_KEYS = (
    "data",
    "variables",
    "det_case",
    "lags_diff",
    "rank",
    "horizon",
    "ordering",
    "target",
    "significance",
    "periods",
    "stats_variables",
    "format",
    "seed",
    "adf_deterministic",
    "adf_max_lags",
    "adf_criterion",
    "lm_lags",
)


def _analysis_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("analysis options (flags override the config file)")
    g.add_argument("--config", help="key = value configuration file")
    g.add_argument("--data", help="input CSV (first column 'year')")
    g.add_argument("--variables", help="comma-separated variables, in model order")
    g.add_argument("--transform", action="append", default=[], metavar="VAR=SPEC",
                   help="per-variable transform, e.g. M2=percent-growth (repeatable)")
    g.add_argument("--det-case", help="Johansen deterministic case: 2, 3 or 4 (default 4)")
    g.add_argument("--lags-diff", type=int, help="lagged differences in the VECM (default 1)")
    g.add_argument("--rank", help="cointegration rank or 'auto' (default auto)")
    g.add_argument("--horizon", type=int, help="FEVD horizon (default 5)")
    g.add_argument("--ordering", help="Cholesky ordering (default: variable order)")
    g.add_argument("--target", help="target variable (default: first variable)")
    g.add_argument("--significance", type=float, help="unit-root significance level")
    g.add_argument("--periods", help="stats periods, e.g. 1976-1990,1991-2001")
    g.add_argument("--stats-variables", help="variables summarised by 'stats'")
    g.add_argument("--adf-deterministic", help="none, constant or constant+trend")
    g.add_argument("--adf-max-lags", help="maximum ADF augmentation lags or 'auto'")
    g.add_argument("--adf-criterion", help="AIC, SC or fixed(n)")
    g.add_argument("--lm-lags", type=int, help="lag order of the residual LM test")
    g.add_argument("--seed", type=int, help=argparse.SUPPRESS)
    g.add_argument("--format", choices=("text", "csv", "json"), help="output format (default text)")
    g.add_argument("--out", help="write the report to this path instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cointkit",
        description="Unit-root tests, Johansen cointegration, VECM estimation and FEVD for annual series.",
        epilog="Exit codes: 0 success, 2 data or configuration error, 3 numerical failure.",
    )
    parser.add_argument("--version", action="version", version=f"cointkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _analysis_parent()
    helps = {
        "adf": "unit-root tests and integration orders",
        "johansen": "Johansen cointegration rank test",
        "vecm": "VECM estimates with residual diagnostics",
        "fevd": "Cholesky forecast-error variance decomposition",
        "stats": "descriptive statistics by period",
        "report": "full pipeline",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[parent], help=text)

    sim = sub.add_parser("simulate", help="write a synthetic dataset in the ingestion CSV format")
    sim.add_argument("--dgp", required=True, help="random-walks, common-trend or stationary-var")
    sim.add_argument("--n", type=int, default=500, help="observations (default 500)")
    sim.add_argument("--k", type=int, default=2, help="variables for random-walks / default VAR")
    sim.add_argument("--alpha", help="loadings, e.g. -0.5,0 (rows split on ';')")
    sim.add_argument("--beta", help="cointegrating vectors, e.g. 1,-1")
    sim.add_argument("--a", dest="A", help="VAR(1) matrix, e.g. '0.5,0;0.2,0.4'")
    sim.add_argument("--names", help="comma-separated column names")
    sim.add_argument("--start-year", type=int, default=1900)
    sim.add_argument("--shock-scale", type=float, default=1.0)
    sim.add_argument("--seed", type=int, default=42)
    sim.add_argument("--out", help="output path (default stdout)")
    return parser


def config_from_args(args) -> PipelineConfig:
    mapping = read_config_file(args.config) if args.config else {}
    for key in _FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = value
    for item in args.transform:
        var, sep, spec = item.partition("=")
        if not sep:
            raise ConfigError(f"--transform expects VAR=SPEC, got {item!r}")
        mapping[f"transform.{var.strip()}"] = spec.strip()
    return PipelineConfig.from_mapping(mapping)


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _simulate(args) -> str:
    names = tuple(n.strip() for n in args.names.split(",")) if args.names else ()
    spec = DgpSpec(
        kind=args.dgp,
        k=args.k,
        alpha=parse_matrix(args.alpha) if args.alpha else None,
        beta=parse_matrix(args.beta) if args.beta else None,
        A=parse_matrix(args.A) if args.A else None,
        names=names,
        shock_scale=args.shock_scale,
    )
    if args.n < 2:
        raise BadSpec("--n must be >= 2")
    return to_csv(simulate_panel(spec, args.n, args.seed, args.start_year))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            _write(_simulate(args), args.out)
            return 0
        cfg = config_from_args(args)
        report = run_pipeline(cfg, sections=SUBCOMMAND_SECTIONS[args.command])
        _write(emit_report(report, cfg.format), args.out)
    except CointkitError as exc:
        print(f"cointkit: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"cointkit: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
