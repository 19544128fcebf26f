"""Rank-restricted vector error-correction models.

Conventions: the error-correction term at observation ``t`` (0-based position
in the panel) is ``beta' [X_{t-1}; d_t]`` with ``d_t = 1`` for a restricted
constant (case 2) and ``d_t = t`` for a restricted trend (case 4).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .errors import RankOutOfRange, ZeroLoading, ZeroPivot
from .johansen import DetCase, _lagged_blocks, concentrate, solve_eigen
from .ols import ols_fit
from .series import Panel

__all__ = [
    "VecmModel",
    "EcmEquationView",
    "estimate_vecm",
    "normalize_beta",
    "adjustment_speed",
    "absorption_horizon",
    "validate_ecm",
    "equation_view",
    "simulate_vecm",
]


@dataclass(frozen=True, eq=False)
class VecmModel:
    """Fitted (or hand-specified) VECM.

    ``alpha`` is k x r, ``beta`` is (k + d) x r where the last ``d`` rows hold
    the restricted deterministic term, ``gamma[i]`` is the k x k matrix on
    ``dX_{t-i-1}`` (rows are equations), and ``const`` is the unrestricted
    constant.
    """

    alpha: np.ndarray
    beta: np.ndarray
    gamma: list = field(default_factory=list)
    const: np.ndarray | None = None
    case: DetCase = DetCase.CASE3
    names: tuple = ()
    sigma: np.ndarray | None = None
    residuals: np.ndarray | None = None
    alpha_t: np.ndarray | None = None
    beta_t: np.ndarray | None = None
    gamma_t: list = field(default_factory=list)
    const_t: np.ndarray | None = None
    r_squared: np.ndarray | None = None
    adj_r_squared: np.ndarray | None = None
    f_stat: np.ndarray | None = None
    regressors: np.ndarray | None = None
    regressor_names: tuple = ()
    normalized_on: int | None = None
    T_effective: int = 0
    sample: tuple = ()
    eigenvalues: np.ndarray | None = None
    r1_cross: np.ndarray | None = None

    def __post_init__(self):
        alpha = np.atleast_2d(np.asarray(self.alpha, dtype=float))
        beta = np.asarray(self.beta, dtype=float)
        if beta.ndim == 1:
            beta = beta[:, None]
        if alpha.shape[0] == 1 and beta.shape[1] != 1:
            alpha = alpha.T
        if alpha.shape[1] != beta.shape[1] and alpha.shape[0] == beta.shape[1]:
            alpha = alpha.T
        case = DetCase.parse(self.case)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "case", case)
        k = alpha.shape[0]
        if beta.shape[0] != k + case.restricted:
            raise ValueError(
                f"beta has {beta.shape[0]} rows; expected {k + case.restricted} for k={k}, {case}"
            )
        object.__setattr__(self, "gamma", [np.asarray(g, dtype=float) for g in self.gamma])
        const = np.zeros(k) if self.const is None else np.asarray(self.const, dtype=float)
        object.__setattr__(self, "const", const)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(k)))

    @property
    def k(self) -> int:
        return self.alpha.shape[0]

    @property
    def r(self) -> int:
        return self.alpha.shape[1]

    @property
    def lags_diff(self) -> int:
        return len(self.gamma)

    @property
    def pi(self) -> np.ndarray:
        """Full ``alpha beta'`` including restricted deterministic columns."""
        return self.alpha @ self.beta.T

    @property
    def pi_endog(self) -> np.ndarray:
        return self.pi[:, : self.k]

    def index(self, target) -> int:
        if isinstance(target, (int, np.integer)):
            if not 0 <= target < self.k:
                raise KeyError(target)
            return int(target)
        return list(self.names).index(target)

    def normalized(self, on) -> "VecmModel":
        """Same model with each cointegrating vector scaled to 1 on variable ``on``."""
        i = self.index(on)
        beta, alpha = normalize_beta(self.beta, i, alpha=self.alpha)
        scale = self.beta[i, :]
        alpha_t = None if self.alpha_t is None else self.alpha_t * np.sign(scale)
        beta_t = self.beta_t
        if self.r1_cross is not None and self.sigma is not None:
            beta_t = _beta_tstats(alpha, beta, self.sigma, self.r1_cross, [i])
        return dataclasses.replace(
            self, alpha=alpha, beta=beta, alpha_t=alpha_t, beta_t=beta_t, normalized_on=i
        )


def normalize_beta(beta, on: int, alpha=None):
    """Divide each column of ``beta`` by its entry in row ``on``.

    With ``alpha`` given, returns ``(beta_n, alpha_n)`` where ``alpha`` is
    scaled inversely so ``alpha beta'`` is unchanged.
    """
    beta = np.asarray(beta, dtype=float)
    squeeze = beta.ndim == 1
    b = beta[:, None] if squeeze else beta
    piv = b[on, :]
    colmax = np.max(np.abs(b), axis=0)
    if np.any(np.abs(piv) <= 1e-12 * np.where(colmax > 0, colmax, 1.0)):
        raise ZeroPivot(f"cointegrating vector has a zero entry at row {on}")
    bn = b / piv
    bn = bn[:, 0] if squeeze else bn
    if alpha is None:
        return bn
    a = np.asarray(alpha, dtype=float)
    an = a * piv if a.ndim == 2 else a * piv[0]
    return bn, an


def _beta_tstats(alpha, beta, sigma, r1_cross, fixed_rows) -> np.ndarray:
    """t-ratios on the free entries of ``beta`` treating ``alpha`` and ``sigma`` as known.

    Var(vec beta_free) = (alpha' sigma^-1 alpha)^-1 kron (H' R1'R1 H)^-1, where
    H selects the rows not pinned by the normalisation. Pinned rows get NaN.
    """
    p, r = beta.shape
    free = [i for i in range(p) if i not in set(fixed_rows)]
    out = np.full((p, r), np.nan)
    if not free:
        return out
    try:
        info_a = alpha.T @ np.linalg.solve(sigma, alpha)
        va = np.diag(np.linalg.inv(info_a))
        vb = np.diag(np.linalg.inv(r1_cross[np.ix_(free, free)]))
    except np.linalg.LinAlgError:
        return out
    se = np.sqrt(np.outer(vb, va))
    with np.errstate(divide="ignore", invalid="ignore"):
        out[free, :] = beta[free, :] / se
    return out


def estimate_vecm(panel, lags_diff: int = 1, r: int = 1, case=DetCase.CASE4, normalize_on=0):
    """Estimate a VECM with cointegration rank ``r``.

    ``beta`` is taken from the leading ``r`` Johansen eigenvectors; ``alpha``,
    the short-run matrices and the unrestricted constant then come from
    equation-by-equation OLS of ``dX_t`` on the error-correction term, lagged
    differences and the constant. For ``r = 1`` the vector is normalised on
    ``normalize_on``; for ``r > 1`` the leading r x r block is set to the
    identity. Pass ``normalize_on=None`` to keep the ``v' S11 v = 1`` scaling.
    """
    case = DetCase.parse(case)
    X = panel.data if isinstance(panel, Panel) else np.asarray(panel, dtype=float)
    k = X.shape[1]
    names = tuple(panel.names) if isinstance(panel, Panel) else tuple(f"x{i + 1}" for i in range(k))
    if not isinstance(r, (int, np.integer)) or not 1 <= r <= k:
        raise RankOutOfRange(f"cointegration rank must lie in 1..{k}, got {r}")
    m = concentrate(X, lags_diff, case)
    lam, V = solve_eigen(m)
    beta = V[:, :r]
    fixed = []
    if normalize_on is not None:
        if r == 1:
            on = names.index(normalize_on) if isinstance(normalize_on, str) else int(normalize_on)
            beta = normalize_beta(beta, on)
            fixed = [on]
        else:
            block = beta[:r, :]
            if abs(np.linalg.det(block)) > 1e-12:
                beta = beta @ np.linalg.inv(block)
                fixed = list(range(r))

    dep, Z1, Z2 = _lagged_blocks(X, lags_diff, case)
    T = dep.shape[0]
    W = np.hstack([Z1 @ beta, Z2])
    fits = [ols_fit(W, dep[:, i]) for i in range(k)]
    coef = np.array([f.coefficients for f in fits])  # k x m
    tval = np.array([f.t_stats for f in fits])
    resid = np.column_stack([f.residuals for f in fits])
    n_par = W.shape[1]

    alpha, alpha_t = coef[:, :r], tval[:, :r]
    gamma = [coef[:, r + i * k : r + (i + 1) * k] for i in range(lags_diff)]
    gamma_t = [tval[:, r + i * k : r + (i + 1) * k] for i in range(lags_diff)]
    has_const = case is not DetCase.CASE2
    const = coef[:, -1] if has_const else np.zeros(k)
    const_t = tval[:, -1] if has_const else np.full(k, np.nan)

    sigma = resid.T @ resid / (T - n_par)
    r1_cross = m.R1.T @ m.R1
    beta_t = _beta_tstats(alpha, beta, sigma, r1_cross, fixed)

    reg_names = [f"CointEq{j + 1}" for j in range(r)]
    for i in range(1, lags_diff + 1):
        reg_names += [f"D({n}(-{i}))" for n in names]
    if has_const:
        reg_names.append("C")
    sample = ()
    if isinstance(panel, Panel):
        sample = (panel.start_year + lags_diff + 1, panel.end_year)

    return VecmModel(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        const=const,
        case=case,
        names=names,
        sigma=sigma,
        residuals=resid,
        alpha_t=alpha_t,
        beta_t=beta_t,
        gamma_t=gamma_t,
        const_t=const_t,
        r_squared=np.array([f.r_squared for f in fits]),
        adj_r_squared=np.array([f.adj_r_squared for f in fits]),
        f_stat=np.array([f.f_stat for f in fits]),
        regressors=W,
        regressor_names=tuple(reg_names),
        normalized_on=fixed[0] if len(fixed) == 1 else None,
        T_effective=T,
        sample=sample,
        eigenvalues=lam[:k],
        r1_cross=r1_cross,
    )


def absorption_horizon(loading: float) -> float:
    """Periods needed to absorb a disequilibrium at adjustment speed ``loading``: 1/|loading|."""
    if loading == 0 or not np.isfinite(loading):
        raise ZeroLoading("loading is zero; the shock is never absorbed")
    return 1.0 / abs(loading)


def _target_loading(model: VecmModel, target):
    if model.r != 1:
        raise RankOutOfRange(f"single-equation reading needs rank 1, model has rank {model.r}")
    i = model.index(target)
    if model.normalized_on != i:
        model = model.normalized(i)
    loading = float(model.alpha[i, 0])
    t = None if model.alpha_t is None else float(model.alpha_t[i, 0])
    return model, i, loading, t


def adjustment_speed(model: VecmModel, target=0) -> dict:
    _, _, loading, _ = _target_loading(model, target)
    return {"loading": loading, "absorption_horizon": absorption_horizon(loading)}


def validate_ecm(model: VecmModel, target=0, t_critical: float = 1.96) -> list[str]:
    """Findings that cast doubt on the error-correction reading of ``model``."""
    from .var import explosive_roots, vecm_to_var

    findings = []
    _, i, loading, t = _target_loading(model, target)
    name = model.names[i]
    if loading >= 0:
        findings.append(f"loading sign invalid: {name} loading {loading:.4f} is not negative")
    elif loading <= -1:
        findings.append(f"loading out of range: {name} loading {loading:.4f} is not above -1")
    if t is not None and np.isfinite(t) and abs(t) < t_critical:
        findings.append(f"loading insignificant: |t| = {abs(t):.4f} < {t_critical}")
    roots = explosive_roots(vecm_to_var(model))
    if roots.size:
        findings.append(
            f"explosive companion roots: max modulus {np.max(np.abs(roots)):.6f} exceeds 1"
        )
    return findings


@dataclass(frozen=True)
class EcmEquationView:
    """Single-equation reading of a rank-1 VECM for one target variable.

    Long-run coefficients are shown on the right-hand side of the target, i.e.
    the negated entries of the cointegrating vector normalised on the target.
    """

    target: str
    loading: float
    loading_t: float | None
    long_run: tuple  # (name, coefficient, t) per non-target row of beta
    short_run: tuple  # (name, coefficient, t)
    r_squared: float | None
    adj_r_squared: float | None
    f_stat: float | None
    names: tuple = ()

    def pi_row(self) -> np.ndarray:
        """Target row of ``alpha beta'`` rebuilt from the displayed values."""
        vals = dict((n, c) for n, c, _ in self.long_run)
        row = [1.0 if n == self.target else -vals[n] for n in self.names]
        row += [-c for n, c, _ in self.long_run if n not in self.names]
        return self.loading * np.array(row)

    def to_dict(self) -> dict:
        def rows(items):
            return [{"name": n, "coef": c, "t": t} for n, c, t in items]

        return {
            "target": self.target,
            "loading": self.loading,
            "loading_t": self.loading_t,
            "long_run": rows(self.long_run),
            "short_run": rows(self.short_run),
            "r_squared": self.r_squared,
            "adj_r_squared": self.adj_r_squared,
            "f_stat": self.f_stat,
        }


def _f(x):
    return None if x is None or not np.isfinite(x) else float(x)


def equation_view(model: VecmModel, target=0) -> EcmEquationView:
    m, i, loading, t = _target_loading(model, target)
    det_name = m.case.restricted_name
    long_run = []
    for j in range(m.beta.shape[0]):
        if j == i:
            continue
        name = m.names[j] if j < m.k else det_name
        bt = None if m.beta_t is None else _f(-m.beta_t[j, 0])
        long_run.append((name, float(-m.beta[j, 0]), bt))
    short_run = []
    for lag, g in enumerate(m.gamma, start=1):
        for j in range(m.k):
            gt = None if not m.gamma_t else _f(m.gamma_t[lag - 1][i, j])
            short_run.append((f"D({m.names[j]}(-{lag}))", float(g[i, j]), gt))
    if m.case is not DetCase.CASE2:
        ct = None if m.const_t is None else _f(m.const_t[i])
        short_run.append(("C", float(m.const[i]), ct))
    fit = [None if a is None else _f(a[i]) for a in (m.r_squared, m.adj_r_squared, m.f_stat)]
    return EcmEquationView(
        target=m.names[i],
        loading=loading,
        loading_t=_f(t) if t is not None else None,
        long_run=tuple(long_run),
        short_run=tuple(short_run),
        r_squared=fit[0],
        adj_r_squared=fit[1],
        f_stat=fit[2],
        names=tuple(m.names),
    )


def _det_value(case: DetCase, t: int) -> np.ndarray:
    if case is DetCase.CASE2:
        return np.ones(1)
    if case is DetCase.CASE4:
        return np.array([float(t)])
    return np.empty(0)


def simulate_vecm(model: VecmModel, initial, shocks) -> np.ndarray:
    """Run the error-correction recursion forward.

    ``initial`` holds the first ``lags_diff + 1`` levels (panel positions
    0..p); ``shocks`` has one row per further observation. Returns the full
    path including the initial rows.
    """
    init = np.atleast_2d(np.asarray(initial, dtype=float))
    eps = np.atleast_2d(np.asarray(shocks, dtype=float))
    p = model.lags_diff
    if init.shape[0] != p + 1:
        raise ValueError(f"need {p + 1} initial observations, got {init.shape[0]}")
    n0 = init.shape[0]
    X = np.vstack([init, np.zeros((eps.shape[0], model.k))])
    for s in range(eps.shape[0]):
        t = n0 + s
        z = np.concatenate([X[t - 1], _det_value(model.case, t)])
        dx = model.const + model.alpha @ (model.beta.T @ z) + eps[s]
        for i, g in enumerate(model.gamma, start=1):
            dx = dx + g @ (X[t - i] - X[t - i - 1])
        X[t] = X[t - 1] + dx
    return X
