"""Augmented Dickey-Fuller tests and integration-order classification."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TooShort
from .ols import ols_fit
from .series import TimeSeries

__all__ = [
    "AdfSpec",
    "AdfResult",
    "IntegrationOrder",
    "adf_critical_values",
    "adf_test",
    "integration_order",
    "default_max_lags",
]

# MacKinnon (2010) response surfaces for the single-unit-root tau statistic:
# cv(T) = b0 + b1/T + b2/T^2 + b3/T^3, at 1%, 5% and 10%.
_TAU_SURFACE = {
    "none": {
        "1%": (-2.56574, -2.2358, -3.627, 0.0),
        "5%": (-1.94100, -0.2686, -3.365, 31.223),
        "10%": (-1.61682, 0.2656, -2.714, 25.364),
    },
    "constant": {
        "1%": (-3.43035, -6.5393, -16.786, -79.433),
        "5%": (-2.86154, -2.8903, -4.234, -40.040),
        "10%": (-2.56677, -1.5384, -2.809, 0.0),
    },
    "constant+trend": {
        "1%": (-3.95877, -9.0531, -28.428, -134.155),
        "5%": (-3.41049, -4.3904, -9.036, -45.374),
        "10%": (-3.12705, -2.5856, -3.925, -22.380),
    },
}

_DET_ALIASES = {
    "none": "none",
    "n": "none",
    "nc": "none",
    "constant": "constant",
    "c": "constant",
    "const": "constant",
    "constant+trend": "constant+trend",
    "ct": "constant+trend",
    "trend": "constant+trend",
}

LEVELS = ("1%", "5%", "10%")


def _level_label(level) -> str:
    if isinstance(level, str):
        if level in LEVELS:
            return level
        level = float(level.rstrip("%")) / (100.0 if level.endswith("%") else 1.0)
    label = f"{round(level * 100):d}%"
    if label not in LEVELS:
        raise ValueError(f"significance level must be one of 0.01, 0.05, 0.10, got {level}")
    return label


def adf_critical_values(deterministic: str, nobs: int) -> dict[str, float]:
    """Finite-sample ADF critical values for a regression with ``nobs`` observations."""
    surface = _TAU_SURFACE[_DET_ALIASES[deterministic]]
    t = float(nobs)
    return {
        lvl: b0 + b1 / t + b2 / t**2 + b3 / t**3 for lvl, (b0, b1, b2, b3) in surface.items()
    }


def default_max_lags(n: int) -> int:
    return int(np.floor((n - 1) ** (1.0 / 3.0)))


@dataclass(frozen=True)
class AdfSpec:
    """``criterion`` is ``"AIC"``, ``"SC"`` or an integer (fixed lag count).

    ``max_lags=None`` means ``floor((n-1)^(1/3))`` for the series at hand.
    """

    deterministic: str = "constant"
    max_lags: int | None = None
    criterion: str | int = "SC"

    def __post_init__(self):
        det = _DET_ALIASES.get(str(self.deterministic).lower())
        if det is None:
            raise ValueError(f"unknown deterministic specification {self.deterministic!r}")
        object.__setattr__(self, "deterministic", det)
        crit = self.criterion
        if isinstance(crit, str):
            up = crit.upper()
            if up in ("BIC", "SIC", "SC"):
                crit = "SC"
            elif up == "AIC":
                crit = "AIC"
            elif up.startswith("FIXED"):
                crit = int(up[5:].strip("():= "))
            else:
                raise ValueError(f"unknown lag criterion {self.criterion!r}")
        if isinstance(crit, int) and crit < 0:
            raise ValueError("fixed lag count must be >= 0")
        object.__setattr__(self, "criterion", crit)
        if self.max_lags is not None and self.max_lags < 0:
            raise ValueError("max_lags must be >= 0")


@dataclass(frozen=True)
class AdfResult:
    t_statistic: float
    chosen_lags: int
    deterministic: str
    critical_values: dict
    reject_unit_root: dict
    n_obs: int
    rho: float

    def to_dict(self) -> dict:
        return {
            "t_statistic": self.t_statistic,
            "chosen_lags": self.chosen_lags,
            "deterministic": self.deterministic,
            "n_obs": self.n_obs,
            "critical_values": dict(self.critical_values),
            "reject_unit_root": dict(self.reject_unit_root),
        }


def _design(y: np.ndarray, lags: int, deterministic: str, drop: int):
    """Dependent variable and regressors for the ADF regression.

    ``drop`` leading differenced observations are discarded so that fits with
    different lag counts can share one sample.
    """
    dy = np.diff(y)
    rows = np.arange(drop, dy.size)
    cols = [y[rows]]  # y_{t-1} aligned with dy_t
    for i in range(1, lags + 1):
        cols.append(dy[rows - i])
    if deterministic in ("constant", "constant+trend"):
        cols.append(np.ones(rows.size))
    if deterministic == "constant+trend":
        cols.append(rows + 1.0)
    return dy[rows], np.column_stack(cols)


def _values(s) -> np.ndarray:
    return np.asarray(s.values if isinstance(s, TimeSeries) else s, dtype=float)


def adf_test(s, spec: AdfSpec | None = None) -> AdfResult:
    """ADF regression of the first difference on the lagged level, lagged
    differences and deterministics; returns the t-ratio on the lagged level.

    Under an information criterion every candidate lag count is fitted on the
    sample left after the largest lag, then the winner is refitted on all
    available observations.
    """
    spec = spec or AdfSpec()
    y = _values(s)
    n = y.size
    fixed = spec.criterion if isinstance(spec.criterion, int) else None
    max_lags = spec.max_lags if spec.max_lags is not None else default_max_lags(n)
    if fixed is not None:
        max_lags = fixed
    if max_lags >= n / 3:
        raise TooShort(f"max_lags={max_lags} must be below n/3 for a series of length {n}")

    def check(lags):
        nobs = n - 1 - lags
        if nobs < 10 + 1 + lags:
            raise TooShort(f"{nobs} usable observations for an ADF regression with {lags} lags")

    if fixed is None:
        check(max_lags)
        best, best_ic = 0, np.inf
        for q in range(max_lags + 1):
            dep, X = _design(y, q, spec.deterministic, max_lags)
            fit = ols_fit(X, dep)
            m = fit.n_obs
            pen = 2.0 if spec.criterion == "AIC" else np.log(m)
            ic = np.log(fit.rss / m) + pen * fit.n_params / m
            if ic < best_ic - 1e-12:
                best, best_ic = q, ic
        lags = best
    else:
        lags = fixed
    check(lags)
    dep, X = _design(y, lags, spec.deterministic, lags)
    fit = ols_fit(X, dep)
    tstat = float(fit.t_stats[0])
    cvs = adf_critical_values(spec.deterministic, fit.n_obs)
    return AdfResult(
        t_statistic=tstat,
        chosen_lags=lags,
        deterministic=spec.deterministic,
        critical_values=cvs,
        reject_unit_root={lvl: bool(tstat < cv) for lvl, cv in cvs.items()},
        n_obs=fit.n_obs,
        rho=float(fit.coefficients[0]),
    )


@dataclass(frozen=True)
class IntegrationOrder:
    order: str
    level_result: AdfResult
    diff_result: AdfResult | None = None
    diff2_result: AdfResult | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "level": self.level_result.to_dict(),
            "diff": None if self.diff_result is None else self.diff_result.to_dict(),
            "diff2": None if self.diff2_result is None else self.diff2_result.to_dict(),
        }


def integration_order(s, spec: AdfSpec | None = None, level="5%") -> IntegrationOrder:
    """Classify ``s`` as I(0), I(1), I(2) or undetermined by testing the level,
    then the first and second differences, at significance ``level``."""
    spec = spec or AdfSpec()
    lvl = _level_label(level)
    y = _values(s)
    res0 = adf_test(y, spec)
    if res0.reject_unit_root[lvl]:
        return IntegrationOrder("I(0)", res0)
    res1 = adf_test(np.diff(y), spec)
    if res1.reject_unit_root[lvl]:
        return IntegrationOrder("I(1)", res0, res1)
    try:
        res2 = adf_test(np.diff(y, 2), spec)
    except TooShort:
        return IntegrationOrder("undetermined", res0, res1)
    order = "I(2)" if res2.reject_unit_root[lvl] else "undetermined"
    return IntegrationOrder(order, res0, res1, res2)
