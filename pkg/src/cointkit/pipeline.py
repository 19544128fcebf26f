"""Configuration, CSV ingestion, the end-to-end analysis and report rendering.

The analysis runs in stages: unit-root classification, Johansen rank test,
VECM estimation, residual diagnostics, variance decomposition and period
statistics. Each stage contributes one JSON-ready section to an
:class:`AnalysisReport`.
"""

from __future__ import annotations

import contextlib
import csv
import io
import json
import math
import os
import warnings
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    BadOrdering,
    CointkitError,
    ConfigError,
    DataFileNotFound,
    GapInSeries,
    MissingColumn,
    ParseError,
    PipelineError,
    RankOutOfRange,
)
from .johansen import DetCase, johansen_test, rank_labels
from .ols import breusch_godfrey, jarque_bera, white_test_system
from .series import Panel, TimeSeries, TransformSpec, align, parse_periods, period_stats, transform
from .unitroot import AdfSpec, integration_order
from .var import fevd, vecm_to_var
from .vecm import adjustment_speed, equation_view, estimate_vecm, validate_ecm

__all__ = [
    "PipelineConfig",
    "AnalysisReport",
    "read_config_file",
    "read_csv",
    "load_dataset",
    "run_pipeline",
    "emit_report",
    "report_from_json",
    "report_from_csv",
    "SECTIONS",
]

SECTIONS = ("adf", "johansen", "vecm", "diagnostics", "fevd", "stats")
FORMATS = ("text", "csv", "json")


# --------------------------------------------------------------------------- config


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment. Returns raw strings."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise DataFileNotFound(f"config file not found: {path}") from exc
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split(sep, 1)
        out[_norm_key(key)] = value.strip()
    if "data" in out and not os.path.isabs(out["data"]):
        out["data"] = str((path.parent / out["data"]).resolve())
    return out


def _norm_key(key: str) -> str:
    key = key.strip()
    head, dot, var = key.partition(".")
    head = head.lower().replace("-", "_")
    # variable names keep their case
    return f"{head}.{var.strip()}" if dot else head


def _split_list(value) -> list:
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [str(v).strip() for v in value]
    return [v for v in (s.strip() for s in str(value).replace(";", ",").replace(" ", ",").split(",")) if v]


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    s = str(value).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}")


@dataclass
class PipelineConfig:
    data: str | None = None
    variables: list | None = None
    transforms: dict = field(default_factory=dict)
    det_case: DetCase = DetCase.CASE4
    lags_diff: int = 1
    rank: int | str = "auto"
    horizon: int = 5
    ordering: list | None = None
    target: str | None = None
    significance: float = 0.05
    periods: list | None = None
    stats_variables: list | None = None
    format: str = "text"
    seed: int = 42
    adf_deterministic: str = "constant"
    adf_max_lags: int | None = None
    adf_criterion: str = "SC"
    lm_lags: int = 1
    white_cross_terms: bool = True

    @classmethod
    def from_mapping(cls, mapping: dict) -> "PipelineConfig":
        """Build from raw (string) values as found in a config file or CLI flags."""
        m = {_norm_key(k): v for k, v in mapping.items() if v is not None}
        cfg = cls()
        try:
            transforms = dict(m.pop("transforms", {}) or {})
            for key in list(m):
                if key.startswith("transform."):
                    transforms[key.split(".", 1)[1]] = m.pop(key)
            cfg.transforms = {
                name: v if isinstance(v, TransformSpec) else TransformSpec.parse(str(v))
                for name, v in transforms.items()
            }
            if "data" in m:
                cfg.data = str(m.pop("data"))
            for key in ("variables", "ordering", "stats_variables"):
                if key in m:
                    setattr(cfg, key, _split_list(m.pop(key)))
            if "det_case" in m:
                cfg.det_case = DetCase.parse(m.pop("det_case"))
            for key in ("lags_diff", "horizon", "seed", "lm_lags"):
                if key in m:
                    setattr(cfg, key, int(m.pop(key)))
            if "adf_max_lags" in m:
                v = m.pop("adf_max_lags")
                cfg.adf_max_lags = None if str(v).lower() in ("", "auto", "none") else int(v)
            if "rank" in m:
                v = str(m.pop("rank")).strip().lower()
                cfg.rank = "auto" if v == "auto" else int(v)
            if "target" in m:
                cfg.target = str(m.pop("target")).strip()
            if "significance" in m:
                cfg.significance = float(m.pop("significance"))
            if "periods" in m:
                v = m.pop("periods")
                cfg.periods = parse_periods(v) if isinstance(v, str) else [tuple(p) for p in v]
            for key in ("format", "adf_deterministic", "adf_criterion"):
                if key in m:
                    setattr(cfg, key, str(m.pop(key)).strip())
            if "white_cross_terms" in m:
                cfg.white_cross_terms = _as_bool(m.pop("white_cross_terms"))
        except CointkitError as exc:
            raise ConfigError(str(exc)) from exc
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid configuration value: {exc}") from exc
        if m:
            raise ConfigError(f"unknown configuration keys: {', '.join(sorted(m))}")
        cfg.check()
        return cfg

    def check(self, names=None):
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if self.lags_diff < 0 or self.horizon < 1 or self.lm_lags < 1:
            raise ConfigError("lags_diff must be >= 0, horizon and lm_lags >= 1")
        if self.significance not in (0.01, 0.05, 0.10, 0.1):
            raise ConfigError("significance must be 0.01, 0.05 or 0.10")
        try:
            AdfSpec(self.adf_deterministic, self.adf_max_lags, self.adf_criterion)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        names = names or self.variables
        if names is None:
            return
        if self.target is not None and self.target not in names:
            raise ConfigError(f"target {self.target!r} is not among the variables {names}")
        if self.ordering is not None and sorted(self.ordering) != sorted(names):
            raise BadOrdering(f"ordering {self.ordering} is not a permutation of {names}")
        for key in self.transforms:
            if key not in names:
                raise ConfigError(f"transform given for unknown variable {key!r}")

    def adf_spec(self) -> AdfSpec:
        return AdfSpec(self.adf_deterministic, self.adf_max_lags, self.adf_criterion)

    def summary(self) -> dict:
        return {
            "variables": self.variables,
            "transforms": {k: str(v) for k, v in self.transforms.items()},
            "det_case": self.det_case.value,
            "lags_diff": self.lags_diff,
            "rank": self.rank,
            "horizon": self.horizon,
            "ordering": self.ordering,
            "target": self.target,
            "significance": self.significance,
            "periods": None if self.periods is None else [f"{a}-{b}" for a, b in self.periods],
            "adf": {
                "deterministic": self.adf_deterministic,
                "max_lags": self.adf_max_lags,
                "criterion": str(self.adf_criterion),
            },
            "lm_lags": self.lm_lags,
        }


# --------------------------------------------------------------------------- ingestion


def read_csv(path) -> tuple:
    """Parse the ingestion CSV. Returns ``(start_year, names, data)``.

    Contract: header row with ``year`` first, one variable per further
    column, ``.`` as decimal point, no thousands separators, consecutive years.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")
    except FileNotFoundError as exc:
        raise DataFileNotFound(f"data file not found: {path}") from exc
    except IsADirectoryError as exc:
        raise DataFileNotFound(f"data path is a directory: {path}") from exc
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or not any(c.strip() for c in rows[0]):
        raise ParseError("empty file, header row required", line=1)
    header = [c.strip() for c in rows[0]]
    if header[0].lower() != "year":
        raise ParseError(f"first column must be 'year', got {header[0]!r}", line=1, column=header[0])
    names = header[1:]
    if not names or any(not n for n in names):
        raise ParseError("header must name every variable column", line=1)
    if len(set(names)) != len(names):
        raise ParseError("duplicate column names in header", line=1)
    years, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", line=lineno)
        try:
            year = int(row[0].strip())
        except ValueError:
            raise ParseError(f"bad year {row[0]!r}", line=lineno, column="year") from None
        vals = []
        for name, cell in zip(names, row[1:]):
            cell = cell.strip()
            try:
                v = float(cell)
            except ValueError:
                msg = "missing value" if not cell else f"non-numeric value {cell!r}"
                raise ParseError(msg, line=lineno, column=name) from None
            if not math.isfinite(v):
                raise ParseError(f"non-finite value {cell!r}", line=lineno, column=name)
            vals.append(v)
        if years:
            if year <= years[-1]:
                raise ParseError(f"year {year} is not after {years[-1]}", line=lineno, column="year")
            if year != years[-1] + 1:
                raise GapInSeries(years[-1] + 1)
        years.append(year)
        values.append(vals)
    if not years:
        raise ParseError("no data rows", line=2)
    return years[0], names, np.array(values)


def load_dataset(path, config: PipelineConfig | None = None) -> Panel:
    """Read, select, transform and align the configured variables."""
    config = config or PipelineConfig()
    start, names, data = read_csv(path)
    wanted = config.variables or names
    missing = [v for v in wanted if v not in names]
    if missing:
        raise MissingColumn(f"columns not found in {path}: {', '.join(missing)}")
    config.check(wanted)
    series = []
    for v in wanted:
        s = TimeSeries(v, start, data[:, names.index(v)])
        spec = config.transforms.get(v)
        series.append(transform(s, spec) if spec is not None else s)
    if len(series) == 1:
        return Panel(tuple(series))
    return align(series)


# --------------------------------------------------------------------------- report


def _clean(obj):
    """Recursively convert to JSON-native types; non-finite floats become None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


@dataclass
class AnalysisReport:
    meta: dict = field(default_factory=dict)
    adf: list | None = None
    johansen: dict | None = None
    vecm: dict | None = None
    diagnostics: dict | None = None
    fevd: dict | None = None
    stats: dict | None = None
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return _clean({f.name: getattr(self, f.name) for f in fields(self)})

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        kwargs = {f.name: d.get(f.name) for f in fields(cls)}
        kwargs["meta"] = kwargs["meta"] or {}
        kwargs["warnings"] = kwargs["warnings"] or []
        return cls(**kwargs)


@contextlib.contextmanager
def _stage(name, report: AnalysisReport):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            yield
        except PipelineError:
            raise
        except CointkitError as exc:
            raise PipelineError(name, exc) from exc
        except (np.linalg.LinAlgError, FloatingPointError) as exc:
            from .errors import NumericalError

            raise PipelineError(name, NumericalError(str(exc))) from exc
    seen = set()
    for w in caught:
        msg = f"{name}: {w.message}"
        if msg not in seen:
            seen.add(msg)
            report.warnings.append(msg)


def _mat(a):
    return None if a is None else np.asarray(a).tolist()


def run_pipeline(config: PipelineConfig, panel: Panel | None = None, sections=SECTIONS) -> AnalysisReport:
    """Run the requested ``sections`` (and whatever they depend on)."""
    sections = set(sections)
    unknown = sections - set(SECTIONS)
    if unknown:
        raise ConfigError(f"unknown report sections: {', '.join(sorted(unknown))}")
    report = AnalysisReport()
    if panel is None:
        if config.data is None:
            raise PipelineError("load", ConfigError("no data file configured"))
        with _stage("load", report):
            panel = load_dataset(config.data, config)
    else:
        with _stage("load", report):
            config.check(panel.names)
    names = panel.names
    target = config.target or names[0]
    ordering = config.ordering or names
    report.meta = {
        "tool": f"cointkit {__version__}",
        "variables": names,
        "sample": [panel.start_year, panel.end_year],
        "n_obs": len(panel),
        "target": target,
        "config": config.summary(),
    }

    if "adf" in sections:
        with _stage("adf", report):
            spec = config.adf_spec()
            rows = []
            for col in panel.columns:
                io_ = integration_order(col, spec, config.significance)
                rows.append({"variable": col.name, **io_.to_dict()})
            report.adf = rows

    need_model = sections & {"vecm", "diagnostics", "fevd"}
    coint = None
    if "johansen" in sections or (need_model and config.rank == "auto"):
        with _stage("johansen", report):
            coint = johansen_test(panel, config.lags_diff, config.det_case)
            report.johansen = coint.to_dict()

    model = None
    if need_model:
        with _stage("vecm", report):
            rank = coint.selected_rank_max if config.rank == "auto" else config.rank
            if not 1 <= rank <= panel.k:
                how = "selected by the max-eigenvalue test" if config.rank == "auto" else "configured"
                raise RankOutOfRange(f"rank {rank} ({how}) is outside 1..{panel.k}")
            model = estimate_vecm(panel, config.lags_diff, rank, config.det_case, normalize_on=target)
            sec = {
                "rank": rank,
                "rank_source": "max-eigenvalue test" if config.rank == "auto" else "configured",
                "det_case": model.case.value,
                "lags_diff": model.lags_diff,
                "sample": list(model.sample),
                "T_effective": model.T_effective,
                "names": list(model.names),
                "beta_rows": list(model.names) + ([model.case.restricted_name] if model.case.restricted else []),
                "alpha": _mat(model.alpha),
                "alpha_t": _mat(model.alpha_t),
                "beta": _mat(model.beta),
                "beta_t": _mat(model.beta_t),
                "gamma": [_mat(g) for g in model.gamma],
                "gamma_t": [_mat(g) for g in model.gamma_t],
                "const": _mat(model.const),
                "sigma": _mat(model.sigma),
                "equations": [
                    {
                        "variable": n,
                        "r_squared": model.r_squared[i],
                        "adj_r_squared": model.adj_r_squared[i],
                        "f_stat": model.f_stat[i],
                    }
                    for i, n in enumerate(model.names)
                ],
                "equation_view": None,
                "adjustment": None,
                "findings": [],
            }
            if rank == 1:
                sec["equation_view"] = equation_view(model, target).to_dict()
                sec["adjustment"] = adjustment_speed(model, target)
                findings = validate_ecm(model, target)
                sec["findings"] = findings
                report.warnings.extend(findings)
            else:
                report.warnings.append(
                    f"vecm: rank {rank} > 1, single-equation view and adjustment speed omitted"
                )
            report.vecm = sec

    if "diagnostics" in sections:
        with _stage("diagnostics", report):
            u, W = model.residuals, model.regressors
            report.diagnostics = {
                "lm": {**breusch_godfrey(u, W, config.lm_lags).to_dict(), "lags": config.lm_lags},
                "white": {
                    **white_test_system(u, W, config.white_cross_terms).to_dict(),
                    "cross_terms": config.white_cross_terms,
                },
                "jb": jarque_bera(u, system=True).to_dict(),
            }

    if "fevd" in sections:
        with _stage("fevd", report):
            lv = vecm_to_var(model)
            tables = fevd(lv, config.horizon, ordering)
            report.fevd = {
                "horizon": config.horizon,
                "ordering": list(ordering),
                "target": target,
                "tables": {n: t.to_dict() for n, t in tables.items()},
            }

    if "stats" in sections:
        with _stage("stats", report):
            periods = config.periods or [(panel.start_year, panel.end_year)]
            vars_ = config.stats_variables or names
            out = {}
            for v in vars_:
                if v not in names:
                    raise MissingColumn(f"stats variable {v!r} is not in the panel")
                out[v] = [
                    {"period": p.period, "mean": p.mean, "median": p.median, "max": p.max,
                     "min": p.min, "n_obs": p.n_obs}
                    for p in period_stats(panel[v], periods)
                ]
            report.stats = {"periods": [f"{a}-{b}" if a != b else f"{a}" for a, b in periods], "variables": out}
    return report


# --------------------------------------------------------------------------- rendering


def _num(x, width=11) -> str:
    """Seven significant digits, at most six decimals (the usual econometrics-package layout)."""
    if x is None:
        return "NA".rjust(width)
    x = float(x)
    if x == 0:
        s = "0.000000"
    else:
        mag = int(math.floor(math.log10(abs(x)))) + 1
        dec = min(max(7 - mag, 0), 6) if abs(x) >= 1 else 6
        s = f"{x:.{dec}f}"
    return s.rjust(width)


def _t(x) -> str:
    return "" if x is None else f"({x:.4f})"


def _render_adf(rows) -> list:
    out = ["Augmented Dickey-Fuller unit-root tests", ""]
    out.append(f"{'Variable':<12}{'Level t':>12}{'lags':>6}{'5% cv':>11}{'Diff t':>12}{'lags':>6}{'5% cv':>11}  Order")
    for row in rows:
        lv, d = row["level"], row["diff"]
        cells = [f"{row['variable']:<12}", f"{lv['t_statistic']:>12.4f}", f"{lv['chosen_lags']:>6d}",
                 f"{lv['critical_values']['5%']:>11.4f}"]
        if d is None:
            cells.append(" " * 29)
        else:
            cells += [f"{d['t_statistic']:>12.4f}", f"{d['chosen_lags']:>6d}", f"{d['critical_values']['5%']:>11.4f}"]
        cells.append(f"  {row['order']}")
        out.append("".join(cells))
    return out


def _render_johansen(j) -> list:
    out = []
    if j["sample"]:
        out.append(f"Sample (adjusted): {j['sample'][0]} {j['sample'][1]}")
    out.append(f"Trend assumption: {j['trend_assumption']}")
    if j["series"]:
        out.append(f"Series: {' '.join(j['series'])}")
    p = j["lags_diff"]
    out.append(f"Lags interval (in first differences): {'1 to ' + str(p) if p else 'none'}")
    for kind, title, stat_label in (
        ("max", "Unrestricted Cointegration Rank Test (Maximum Eigenvalue)", "Max-Eigen"),
        ("trace", "Unrestricted Cointegration Rank Test (Trace)", "Trace"),
    ):
        out += ["", title, "",
                f"{'Hypothesized':<16}{'':>12}{stat_label:>12}{'0.05':>16}",
                f"{'No. of CE(s)':<16}{'Eigenvalue':>12}{'Statistic':>12}{'Critical Value':>16}"]
        for row in j["rows"]:
            label = row["hypothesis"] + (" *" if row[f"{kind}_reject"] else "")
            out.append(f"{label:<16}{_num(row['eigenvalue'], 12)}{_num(row[f'{kind}_stat'], 12)}"
                       f"{_num(row[f'{kind}_cv_5pct'], 16)}")
        rank = j["selected_rank_max" if kind == "max" else "selected_rank_trace"]
        name = "Max-eigenvalue" if kind == "max" else "Trace"
        out += ["", f"{name} test indicates {rank} cointegrating eqn(s) at the 0.05 level",
                " * denotes rejection of the hypothesis at the 0.05 level"]
    return out


def _render_vecm(v, diag) -> list:
    out = ["Vector Error Correction Estimates"]
    if v["sample"]:
        out.append(f"Sample (adjusted): {v['sample'][0]} {v['sample'][1]}")
    out.append(f"Cointegration rank: {v['rank']} ({v['rank_source']})")
    view = v.get("equation_view")
    if view:
        tgt = view["target"]
        out += ["", f"{'Variables':<26}D({tgt})", f"{'':<26}{'coefficients':>14}  t-statistic"]
        out.append(f"{'loading (error correction)':<26}{_num(view['loading'], 14)}  {_t(view['loading_t'])}")
        out.append("Long run")
        for r in view["long_run"]:
            out.append(f"  {r['name']:<24}{_num(r['coef'], 14)}  {_t(r['t'])}")
        out.append("Short run")
        for r in view["short_run"]:
            out.append(f"  {r['name']:<24}{_num(r['coef'], 14)}  {_t(r['t'])}")
        fit = []
        if view["r_squared"] is not None:
            fit.append(f"R^2 = {view['r_squared']:.4f}")
        if view["adj_r_squared"] is not None:
            fit.append(f"R^2 adj. = {view['adj_r_squared']:.4f}")
        if view["f_stat"] is not None:
            fit.append(f"F-stat. = {view['f_stat']:.4f}")
        diag_line = []
        if diag:
            diag_line = [
                f"LM stat = {diag['lm']['statistic']:.4f} (Prob: {diag['lm']['p_value']:.4f})",
                f"White test (Chi-sq) = {diag['white']['statistic']:.4f} (Prob: {diag['white']['p_value']:.4f})",
                f"JB = {diag['jb']['statistic']:.4f} (Prob: {diag['jb']['p_value']:.4f})",
            ]
        out += ["", "; ".join(fit + diag_line) + "; (.) = t-statistic"]
        adj = v.get("adjustment")
        if adj:
            out.append(f"Adjustment speed: loading {adj['loading']:.4f}, "
                       f"absorption horizon {adj['absorption_horizon']:.4f} periods")
    else:
        out += ["", "alpha (loadings):"]
        for n, row in zip(v["names"], v["alpha"]):
            out.append(f"  {n:<12}" + "".join(_num(x, 12) for x in row))
        out.append("beta (cointegrating vectors):")
        for n, row in zip(v["beta_rows"], v["beta"]):
            out.append(f"  {n:<12}" + "".join(_num(x, 12) for x in row))
    return out


def _render_diagnostics(d) -> list:
    out = ["Residual diagnostics"]
    for key in ("lm", "white", "jb"):
        t = d[key]
        out.append(f"  {t['test_name']:<30} stat = {t['statistic']:.4f}  df = {t['df']}  Prob = {t['p_value']:.4f}")
    return out


def _render_fevd(f) -> list:
    out = []
    tables = f["tables"]
    order = [f["target"]] + [n for n in tables if n != f["target"]]
    for name in order:
        t = tables[name]
        cols = t["ordering"]
        out += ["", f"Variance Decomposition of {name}:",
                f"{'Period':>7}{'S.E.':>12}" + "".join(f"{c:>12}" for c in cols)]
        for row in t["rows"]:
            out.append(f"{row['period']:>7d}{_num(row['se'], 12)}" + "".join(_num(row["shares"][c], 12) for c in cols))
    out.append(f"Cholesky Ordering: {' '.join(f['ordering'])}")
    return out


def _render_stats(s) -> list:
    out = ["Descriptive statistics by period"]
    for v, rows in s["variables"].items():
        out += ["", f"{v:<10}" + "".join(f"{r['period']:>12}" for r in rows)]
        for key, label in (("mean", "mean"), ("median", "median"), ("max", "maximum"), ("min", "minimum")):
            out.append(f"{label:<10}" + "".join(_num(r[key], 12) for r in rows))
    return out


def _render_text(d: dict) -> str:
    blocks = []
    meta = d.get("meta") or {}
    if meta:
        blocks.append([f"{meta.get('tool', 'cointkit')} analysis of {' '.join(meta['variables'])}, "
                       f"{meta['sample'][0]}-{meta['sample'][1]} ({meta['n_obs']} obs)"])
    if d.get("adf"):
        blocks.append(_render_adf(d["adf"]))
    if d.get("johansen"):
        blocks.append(_render_johansen(d["johansen"]))
    if d.get("vecm"):
        blocks.append(_render_vecm(d["vecm"], d.get("diagnostics")))
    if d.get("diagnostics"):
        blocks.append(_render_diagnostics(d["diagnostics"]))
    if d.get("fevd"):
        blocks.append(_render_fevd(d["fevd"]))
    if d.get("stats"):
        blocks.append(_render_stats(d["stats"]))
    if d.get("warnings"):
        blocks.append(["Warnings:"] + [f"  - {w}" for w in d["warnings"]])
    sep = "\n" + "=" * 78 + "\n"
    return sep.join("\n".join(b) for b in blocks) + "\n"


def _flatten(obj, prefix, out):
    if isinstance(obj, dict) and obj:
        for k, v in obj.items():
            _flatten(v, f"{prefix}/{k}" if prefix else str(k), out)
    elif isinstance(obj, list) and obj:
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}/{i}", out)
    else:
        out.append((prefix, json.dumps(obj)))


def _render_csv(d: dict) -> str:
    rows = []
    _flatten(d, "", rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["path", "value"])
    w.writerows(rows)
    return buf.getvalue()


def emit_report(report: AnalysisReport, fmt: str = "text") -> str:
    """Render as ``text`` (econometrics-package style tables), ``json`` or ``csv`` (path/value rows)."""
    d = report.to_dict()
    if fmt == "text":
        return _render_text(d)
    if fmt == "json":
        return json.dumps(d, indent=2, allow_nan=False) + "\n"
    if fmt == "csv":
        return _render_csv(d)
    raise ConfigError(f"unknown output format {fmt!r}")


def report_from_json(text: str) -> AnalysisReport:
    return AnalysisReport.from_dict(json.loads(text))


def _unflatten(rows):
    root: dict = {}
    for path, value in rows:
        keys = path.split("/")
        node = root
        for key, nxt in zip(keys, keys[1:]):
            node = node.setdefault(key, {})
        node[keys[-1]] = value

    def fix(node):
        if isinstance(node, dict):
            node = {k: fix(v) for k, v in node.items()}
            if node and all(k.isdigit() for k in node) and sorted(map(int, node)) == list(range(len(node))):
                return [node[str(i)] for i in range(len(node))]
        return node

    return fix(root)


def report_from_csv(text: str) -> AnalysisReport:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["path", "value"]:
        raise ParseError("not a cointkit csv report", line=1)
    return AnalysisReport.from_dict(_unflatten((p, json.loads(v)) for p, v in rows[1:]))
