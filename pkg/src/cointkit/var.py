"""Level-VAR form of a VECM, moving-average coefficients, Cholesky FEVD and IRFs."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import BadOrdering, NotPositiveDefinite
from .johansen import DetCase

__all__ = [
    "LevelVar",
    "FevdTable",
    "vecm_to_var",
    "companion",
    "explosive_roots",
    "ma_coefficients",
    "fevd",
    "irf",
    "simulate_var",
]

EXPLOSIVE_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class LevelVar:
    """``X_t = intercept + trend * t + sum_i A[i] X_{t-i-1} + e_t``, with Cov(e) = sigma."""

    A: list
    sigma: np.ndarray | None = None
    intercept: np.ndarray | None = None
    trend: np.ndarray | None = None
    names: tuple = ()

    def __post_init__(self):
        A = [np.atleast_2d(np.asarray(a, dtype=float)) for a in self.A]
        if not A:
            raise ValueError("a level VAR needs at least one coefficient matrix")
        k = A[0].shape[0]
        object.__setattr__(self, "A", A)
        for attr in ("intercept", "trend"):
            v = getattr(self, attr)
            object.__setattr__(self, attr, np.zeros(k) if v is None else np.asarray(v, dtype=float))
        sigma = np.eye(k) if self.sigma is None else np.atleast_2d(np.asarray(self.sigma, dtype=float))
        object.__setattr__(self, "sigma", sigma)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(k)))

    @property
    def k(self) -> int:
        return self.A[0].shape[0]

    @property
    def order(self) -> int:
        return len(self.A)


def vecm_to_var(model) -> LevelVar:
    """Level VAR of order ``lags_diff + 1`` implied by a VECM.

    ``A1 = I + Pi + Gamma1``, ``A_i = Gamma_i - Gamma_{i-1}``, ``A_P = -Gamma_p``;
    a restricted constant folds into the intercept and a restricted trend
    becomes the trend slope.
    """
    k = model.k
    pi = model.pi_endog
    gam = model.gamma
    p = len(gam)
    A = [np.eye(k) + pi + (gam[0] if p else 0.0)]
    for i in range(1, p):
        A.append(gam[i] - gam[i - 1])
    if p:
        A.append(-gam[p - 1])
    intercept = np.array(model.const, dtype=float)
    trend = np.zeros(k)
    det = model.alpha @ model.beta[k:, :].T  # k x d
    if model.case is DetCase.CASE2:
        intercept = intercept + det[:, 0]
    elif model.case is DetCase.CASE4:
        trend = det[:, 0]
    return LevelVar(A=A, sigma=model.sigma, intercept=intercept, trend=trend, names=model.names)


def companion(var: LevelVar) -> np.ndarray:
    k, P = var.k, var.order
    F = np.zeros((k * P, k * P))
    F[:k, :] = np.hstack(var.A)
    if P > 1:
        F[k:, :-k] = np.eye(k * (P - 1))
    return F


def explosive_roots(var: LevelVar, tol: float = EXPLOSIVE_TOL) -> np.ndarray:
    ev = np.linalg.eigvals(companion(var))
    return ev[np.abs(ev) > 1.0 + tol]


def ma_coefficients(var: LevelVar, H: int) -> list:
    """Psi_0 .. Psi_{H-1} from Psi_j = sum_{i=1..min(j,P)} A_i Psi_{j-i}."""
    if H < 1:
        raise ValueError("H must be >= 1")
    k = var.k
    psi = [np.eye(k)]
    for j in range(1, H):
        acc = np.zeros((k, k))
        for i in range(1, min(j, var.order) + 1):
            acc += var.A[i - 1] @ psi[j - i]
        psi.append(acc)
    return psi


def _ordering(var: LevelVar, ordering) -> list:
    if ordering is None:
        return list(range(var.k))
    idx = []
    for o in ordering:
        if isinstance(o, (int, np.integer)):
            idx.append(int(o))
        elif o in var.names:
            idx.append(list(var.names).index(o))
        else:
            raise BadOrdering(f"unknown variable {o!r} in Cholesky ordering")
    if sorted(idx) != list(range(var.k)):
        raise BadOrdering(f"ordering {list(ordering)} is not a permutation of {list(var.names)}")
    return idx


def _impact(var: LevelVar, order: list) -> np.ndarray:
    s = var.sigma[np.ix_(order, order)]
    try:
        return linalg.cholesky(s, lower=True)
    except linalg.LinAlgError as exc:
        raise NotPositiveDefinite("residual covariance is not positive definite") from exc


def irf(var: LevelVar, H: int, ordering=None) -> np.ndarray:
    """Orthogonalised impulse responses, shape ``(H, k, k)``.

    ``out[j, i, m]`` is the response at horizon ``j`` of the i-th variable in
    ``ordering`` to the m-th orthogonalised shock; ``out[0]`` is the lower
    Cholesky factor of the reordered covariance.
    """
    order = _ordering(var, ordering)
    P = _impact(var, order)
    psi = ma_coefficients(var, H)
    return np.array([ps[np.ix_(order, order)] @ P for ps in psi])


@dataclass(frozen=True, eq=False)
class FevdTable:
    target: str
    horizons: np.ndarray
    se: np.ndarray
    shares: np.ndarray  # H x k, percentages, columns follow `ordering`
    ordering: tuple

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "ordering": list(self.ordering),
            "rows": [
                {
                    "period": int(h),
                    "se": float(s),
                    "shares": {n: float(v) for n, v in zip(self.ordering, row)},
                }
                for h, s, row in zip(self.horizons, self.se, self.shares)
            ],
        }


def fevd(var: LevelVar, H: int = 5, ordering=None, targets=None) -> dict:
    """Cholesky forecast-error variance decomposition for horizons 1..H.

    Returns ``{target name: FevdTable}``; by default every variable is a target.
    """
    order = _ordering(var, ordering)
    if explosive_roots(var).size:
        warnings.warn("level VAR has explosive roots", RuntimeWarning, stacklevel=2)
    theta = irf(var, H, order)
    # cum[h-1, i, m] = sum_{j<h} theta_j[i, m]^2
    cum = np.cumsum(theta**2, axis=0)
    names = [var.names[i] for i in order]
    if targets is None:
        targets = list(var.names)
    out = {}
    for t in targets:
        ti = t if isinstance(t, (int, np.integer)) else list(var.names).index(t)
        row = order.index(int(ti))
        num = cum[:, row, :]
        mse = num.sum(axis=1)
        out[var.names[ti]] = FevdTable(
            target=var.names[ti],
            horizons=np.arange(1, H + 1),
            se=np.sqrt(mse),
            # ratio first so a lone contribution gives exactly 100
            shares=100.0 * (num / mse[:, None]),
            ordering=tuple(names),
        )
    return out


def simulate_var(var: LevelVar, initial, shocks) -> np.ndarray:
    """Iterate the level VAR forward; trend and intercept use panel positions."""
    init = np.atleast_2d(np.asarray(initial, dtype=float))
    eps = np.atleast_2d(np.asarray(shocks, dtype=float))
    P = var.order
    if init.shape[0] != P:
        raise ValueError(f"need {P} initial observations, got {init.shape[0]}")
    X = np.vstack([init, np.zeros((eps.shape[0], var.k))])
    for s in range(eps.shape[0]):
        t = P + s
        x = var.intercept + var.trend * t + eps[s]
        for i, a in enumerate(var.A, start=1):
            x = x + a @ X[t - i]
        X[t] = x
    return X
