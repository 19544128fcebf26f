"""Least squares, residual diagnostics and the chi-square/F tail probabilities they use.

The estimator works from a QR factorisation of the design matrix. Residual
tests return :class:`ChiSqTest` records whose p-values are upper-tail
chi-square probabilities.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np
from scipy import linalg, special

from .errors import RankDeficient, TooFewObservations

__all__ = [
    "OlsFit",
    "ChiSqTest",
    "ols_fit",
    "chi_sq_survival",
    "f_survival",
    "jarque_bera",
    "breusch_godfrey",
    "white_test",
    "white_test_system",
    "white_auxiliary_terms",
]

_RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OlsFit:
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_stats: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    r_squared: float
    adj_r_squared: float
    f_stat: float
    sigma2: float
    rss: float
    n_obs: int
    n_params: int
    has_constant: bool
    cov_params: np.ndarray

    @property
    def f_pvalue(self) -> float:
        df1 = self.n_params - 1 if self.has_constant else self.n_params
        if df1 < 1 or not np.isfinite(self.f_stat):
            return float("nan") if df1 < 1 else 0.0
        return f_survival(self.f_stat, df1, self.n_obs - self.n_params)

    def loglike(self) -> float:
        n = self.n_obs
        return -0.5 * n * (np.log(2 * np.pi) + np.log(self.rss / n) + 1.0)


@dataclass(frozen=True)
class ChiSqTest:
    test_name: str
    statistic: float
    df: int
    p_value: float

    def to_dict(self) -> dict:
        return {
            "test_name": self.test_name,
            "statistic": float(self.statistic),
            "df": int(self.df),
            "p_value": float(self.p_value),
        }


def _has_constant(X: np.ndarray) -> bool:
    return bool(np.any((np.ptp(X, axis=0) == 0) & np.all(X != 0, axis=0)))


def ols_fit(X, y) -> OlsFit:
    """Fit ``y = X b + e`` by least squares.

    R-squared is centred when ``X`` contains a constant column and uncentred
    otherwise; the F statistic tests all slopes (or all coefficients, without
    a constant) jointly.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n, k = X.shape
    if y.shape != (n,):
        raise ValueError(f"y has shape {y.shape}, expected ({n},)")
    if n <= k:
        raise TooFewObservations(f"{n} observations for {k} regressors")

    q, r = np.linalg.qr(X, mode="reduced")
    diag = np.abs(np.diag(r))
    scale = max(diag.max(initial=0.0), 1e-300)
    if diag.size and diag.min() <= _RANK_TOL * scale:
        raise RankDeficient(f"design matrix of shape {X.shape} is not of full column rank")

    beta = linalg.solve_triangular(r, q.T @ y)
    fitted = X @ beta
    resid = y - fitted
    rss = float(resid @ resid)
    df_resid = n - k
    sigma2 = rss / df_resid
    r_inv = linalg.solve_triangular(r, np.eye(k))
    xtx_inv = r_inv @ r_inv.T
    cov = sigma2 * xtx_inv
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        tvals = np.where(se > 0, beta / se, np.copysign(np.inf, beta))

    const = _has_constant(X)
    tss = float(np.sum((y - y.mean()) ** 2)) if const else float(y @ y)
    r2 = 1.0 - rss / tss if tss > 0 else 0.0
    if const and k == 1:
        r2 = 0.0
    df_model = k - 1 if const else k
    df_total = n - 1 if const else n
    adj = 1.0 - (1.0 - r2) * df_total / df_resid
    if df_model > 0:
        with np.errstate(divide="ignore", invalid="ignore"):
            f = (r2 / df_model) / ((1.0 - r2) / df_resid) if r2 < 1.0 else np.inf
    else:
        f = np.nan

    return OlsFit(
        coefficients=beta,
        std_errors=se,
        t_stats=tvals,
        residuals=resid,
        fitted=fitted,
        r_squared=float(r2),
        adj_r_squared=float(adj),
        f_stat=float(f),
        sigma2=float(sigma2),
        rss=rss,
        n_obs=n,
        n_params=k,
        has_constant=const,
        cov_params=cov,
    )


def chi_sq_survival(x: float, df: int) -> float:
    """P(chi2_df > x), via the regularized upper incomplete gamma function."""
    if x < 0:
        raise ValueError("chi-square statistic must be non-negative")
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if x == 0:
        return 1.0
    return float(special.gammaincc(0.5 * df, 0.5 * x))


def f_survival(x: float, df1: int, df2: int) -> float:
    """P(F_{df1,df2} > x)."""
    if x <= 0:
        return 1.0
    return float(special.fdtrc(df1, df2, x))


def _as_matrix(residuals) -> np.ndarray:
    u = np.asarray(residuals, dtype=float)
    return u[:, None] if u.ndim == 1 else u


def _jb_component(x: np.ndarray) -> float:
    x = x - x.mean()
    n = x.size
    s2, s3, s4 = (x**2).sum(), (x**3).sum(), (x**4).sum()
    if s2 == 0:
        return 0.0
    # power sums keep integer-valued inputs exact
    skew2 = n * s3**2 / s2**3
    kurt = n * s4 / s2**2
    return n / 6.0 * (skew2 + (kurt - 3.0) ** 2 / 4.0)


def jarque_bera(residuals, system: bool | None = None) -> ChiSqTest:
    """Jarque-Bera normality test.

    A single column gives the usual statistic on 2 degrees of freedom. With
    ``system=True`` the residual matrix is orthogonalised with the Cholesky
    factor of its covariance and the per-component statistics are summed
    (2k degrees of freedom).
    """
    u = _as_matrix(residuals)
    n, k = u.shape
    if n < 8:
        raise TooFewObservations(f"Jarque-Bera needs at least 8 observations, got {n}")
    if system is None:
        system = k > 1
    if not system:
        if k != 1:
            raise ValueError("univariate Jarque-Bera expects a single residual series")
        stat = _jb_component(u[:, 0])
        return ChiSqTest("Jarque-Bera", stat, 2, chi_sq_survival(stat, 2))
    uc = u - u.mean(axis=0)
    sigma = uc.T @ uc / n
    try:
        chol = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError as exc:
        raise RankDeficient("residual covariance is singular") from exc
    w = linalg.solve_triangular(chol, uc.T, lower=True).T
    stat = float(sum(_jb_component(w[:, j]) for j in range(k)))
    return ChiSqTest("Jarque-Bera (system)", stat, 2 * k, chi_sq_survival(stat, 2 * k))


def breusch_godfrey(residuals, regressors, h: int = 1) -> ChiSqTest:
    """Residual serial-correlation LM test at lag ``h``.

    The residuals are regressed on the original regressors plus ``h`` lagged
    residual blocks (pre-sample lags set to zero). The statistic is
    ``T * (k - tr(S_u^{-1} S_e))`` with ``S_u`` the residual covariance and
    ``S_e`` that of the auxiliary regression; it is chi-square with h*k^2
    degrees of freedom. With one residual series this is the usual
    Breusch-Godfrey T*R^2 form.
    """
    u = _as_matrix(residuals)
    Z = np.asarray(regressors, dtype=float)
    if Z.ndim == 1:
        Z = Z[:, None]
    n, k = u.shape
    if Z.shape[0] != n:
        raise ValueError("residuals and regressors must have the same number of rows")
    if h < 1:
        raise ValueError("lag order h must be >= 1")
    if n <= Z.shape[1] + h * k:
        raise TooFewObservations(
            f"{n} observations for {Z.shape[1] + h * k} auxiliary regressors"
        )
    lagged = np.zeros((n, h * k))
    for i in range(1, h + 1):
        lagged[i:, (i - 1) * k : i * k] = u[:-i]
    aux = np.hstack([Z, lagged])
    coef, *_ = np.linalg.lstsq(aux, u, rcond=None)
    e = u - aux @ coef
    s_u = u.T @ u / n
    s_e = e.T @ e / n
    try:
        stat = n * (k - np.trace(np.linalg.solve(s_u, s_e)))
    except np.linalg.LinAlgError as exc:
        raise RankDeficient("residual covariance is singular") from exc
    stat = max(float(stat), 0.0)
    df = h * k * k
    name = "Breusch-Godfrey LM" if k == 1 else "Breusch-Godfrey LM (system)"
    return ChiSqTest(name, stat, df, chi_sq_survival(stat, df))


def white_auxiliary_terms(regressors, cross_terms: bool = True) -> np.ndarray:
    """Non-constant levels, squares and (optionally) cross products of ``regressors``.

    Constant columns are skipped and collinear columns are dropped with a
    warning, so the returned matrix always has full column rank once an
    intercept is prepended.
    """
    X = np.asarray(regressors, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    keep = [j for j in range(X.shape[1]) if np.ptp(X[:, j]) > 0]
    base = X[:, keep]
    cols = [base[:, j] for j in range(base.shape[1])]
    if cross_terms:
        pairs = combinations_with_replacement(range(base.shape[1]), 2)
    else:
        pairs = ((j, j) for j in range(base.shape[1]))
    cols += [base[:, i] * base[:, j] for i, j in pairs]
    n = X.shape[0]
    selected = [np.ones(n)]
    dropped = 0
    for c in cols:
        trial = np.column_stack(selected + [c])
        s = np.linalg.svd(trial / np.linalg.norm(trial, axis=0), compute_uv=False)
        if s[-1] > 1e-8 * s[0]:
            selected.append(c)
        else:
            dropped += 1
    if dropped:
        warnings.warn(
            f"White test: dropped {dropped} collinear auxiliary term(s)",
            RuntimeWarning,
            stacklevel=3,
        )
    return np.column_stack(selected[1:]) if len(selected) > 1 else np.empty((n, 0))


def white_test(residuals, regressors, cross_terms: bool = True) -> ChiSqTest:
    """White heteroskedasticity test for one residual series: ``n * R^2`` of the
    squared residuals on levels, squares and cross products of the regressors."""
    e = np.asarray(residuals, dtype=float).ravel()
    aux = white_auxiliary_terms(regressors, cross_terms)
    n, m = aux.shape
    if m == 0:
        raise RankDeficient("no usable auxiliary regressors for the White test")
    if n <= m + 1:
        raise TooFewObservations(f"{n} observations for {m + 1} auxiliary regressors")
    fit = ols_fit(np.column_stack([np.ones(n), aux]), e**2)
    stat = n * fit.r_squared
    return ChiSqTest("White", stat, m, chi_sq_survival(stat, m))


def white_test_system(residuals, regressors, cross_terms: bool = True) -> ChiSqTest:
    """Joint White test over all residual cross products.

    Each unique product ``u_i u_j`` is regressed on the auxiliary terms. The
    statistic is ``T * k(k+1)/2 * R2m`` where
    ``R2m = 1 - 2/(k(k+1)) * tr(Omega Omega0^{-1})``, with ``Omega`` the
    covariance of the auxiliary-regression residuals and ``Omega0`` the
    covariance of the demeaned products. Degrees of freedom are
    ``k(k+1)/2`` times the number of auxiliary terms.
    """
    u = _as_matrix(residuals)
    n, k = u.shape
    aux = white_auxiliary_terms(regressors, cross_terms)
    m = aux.shape[1]
    if m == 0:
        raise RankDeficient("no usable auxiliary regressors for the White test")
    if n <= m + 1:
        raise TooFewObservations(f"{n} observations for {m + 1} auxiliary regressors")
    idx = [(i, j) for i in range(k) for j in range(i, k)]
    prods = np.column_stack([u[:, i] * u[:, j] for i, j in idx])
    Z = np.column_stack([np.ones(n), aux])
    coef, *_ = np.linalg.lstsq(Z, prods, rcond=None)
    e = prods - Z @ coef
    d = prods - prods.mean(axis=0)
    omega = e.T @ e / n
    omega0 = d.T @ d / n
    p = len(idx)
    try:
        r2m = 1.0 - np.trace(np.linalg.solve(omega0, omega)) / p
    except np.linalg.LinAlgError as exc:
        raise RankDeficient("residual cross products are collinear") from exc
    stat = max(float(n * p * r2m), 0.0)
    df = p * m
    name = "White" if k == 1 else "White (system)"
    return ChiSqTest(name, stat, df, chi_sq_survival(stat, df))
