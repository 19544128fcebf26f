"""Johansen reduced-rank cointegration test.

The procedure concentrates out short-run dynamics and unrestricted
deterministics, solves the canonical-correlation eigenproblem between the
differenced and lagged-level residuals, and turns the eigenvalues into
max-eigenvalue and trace statistics compared against tabulated 5% points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import NotPositiveDefinite, RankDeficient, TooShort
from .series import Panel

__all__ = [
    "DetCase",
    "MomentMatrices",
    "CointegrationResult",
    "critical_value",
    "MAX_EIG_CV_5PCT",
    "TRACE_CV_5PCT",
    "concentrate",
    "solve_eigen",
    "statistics",
    "select_rank",
    "johansen_test",
    "rank_labels",
]


class DetCase(enum.Enum):
    """Placement of deterministic terms.

    CASE2: constant restricted to the cointegration space.
    CASE3: unrestricted constant.
    CASE4: unrestricted constant, linear trend restricted to the cointegration space.
    """

    CASE2 = 2
    CASE3 = 3
    CASE4 = 4

    @classmethod
    def parse(cls, value) -> "DetCase":
        if isinstance(value, DetCase):
            return value
        text = str(value).strip().lower().replace("case", "")
        try:
            return cls(int(text))
        except (ValueError, TypeError):
            raise ValueError(f"unknown deterministic case {value!r}; use 2, 3 or 4") from None

    @property
    def restricted(self) -> int:
        """Number of deterministic rows appended to the cointegrating vector."""
        return 0 if self is DetCase.CASE3 else 1

    @property
    def description(self) -> str:
        return {
            DetCase.CASE2: "No deterministic trend (restricted constant)",
            DetCase.CASE3: "Linear deterministic trend",
            DetCase.CASE4: "Linear deterministic trend (restricted)",
        }[self]

    @property
    def restricted_name(self) -> str | None:
        return {DetCase.CASE2: "C", DetCase.CASE3: None, DetCase.CASE4: "@TREND"}[self]


# MacKinnon-Haug-Michelis (1999) 5% critical values indexed by k - r = 1..6.
MAX_EIG_CV_5PCT = {
    DetCase.CASE2: (9.164546, 15.89210, 22.29962, 28.58808, 34.80587, 40.95680),
    DetCase.CASE3: (3.841466, 14.26460, 21.13162, 27.58434, 33.87687, 40.07757),
    DetCase.CASE4: (12.51798, 19.38704, 25.82321, 32.11832, 38.33101, 44.49720),
}
TRACE_CV_5PCT = {
    DetCase.CASE2: (9.164546, 20.26184, 35.19275, 54.07904, 76.97277, 103.8473),
    DetCase.CASE3: (3.841466, 15.49471, 29.79707, 47.85613, 69.81889, 95.75366),
    DetCase.CASE4: (12.51798, 25.87211, 42.91525, 63.87610, 88.80380, 117.7082),
}


def critical_value(case, k_minus_r: int, test: str = "max") -> float:
    case = DetCase.parse(case)
    table = MAX_EIG_CV_5PCT if test == "max" else TRACE_CV_5PCT
    if not 1 <= k_minus_r <= len(table[case]):
        raise ValueError(f"no tabulated critical value for k - r = {k_minus_r}")
    return table[case][k_minus_r - 1]


@dataclass(frozen=True, eq=False)
class MomentMatrices:
    S00: np.ndarray
    S01: np.ndarray
    S10: np.ndarray
    S11: np.ndarray
    T_effective: int
    R0: np.ndarray
    R1: np.ndarray


@dataclass(frozen=True, eq=False)
class CointegrationResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    max_stats: np.ndarray
    trace_stats: np.ndarray
    critical_values_5pct: np.ndarray
    trace_critical_values_5pct: np.ndarray
    selected_rank_max: int
    selected_rank_trace: int
    T_effective: int
    det_case: DetCase
    lags_diff: int
    names: tuple = ()
    sample: tuple = ()

    @property
    def k(self) -> int:
        return self.eigenvalues.size

    def to_dict(self) -> dict:
        labels = rank_labels(self.k)
        rows = []
        for r in range(self.k):
            rows.append(
                {
                    "hypothesis": labels[r],
                    "eigenvalue": float(self.eigenvalues[r]),
                    "max_stat": float(self.max_stats[r]),
                    "max_cv_5pct": float(self.critical_values_5pct[r]),
                    "max_reject": bool(self.max_stats[r] > self.critical_values_5pct[r]),
                    "trace_stat": float(self.trace_stats[r]),
                    "trace_cv_5pct": float(self.trace_critical_values_5pct[r]),
                    "trace_reject": bool(self.trace_stats[r] > self.trace_critical_values_5pct[r]),
                }
            )
        return {
            "series": list(self.names),
            "sample": list(self.sample),
            "det_case": self.det_case.value,
            "trend_assumption": self.det_case.description,
            "lags_diff": self.lags_diff,
            "T_effective": self.T_effective,
            "rows": rows,
            "selected_rank_max": self.selected_rank_max,
            "selected_rank_trace": self.selected_rank_trace,
        }


def rank_labels(k: int) -> list[str]:
    return ["None"] + [f"At most {r}" for r in range(1, k)]


def _lagged_blocks(X: np.ndarray, lags_diff: int, case: DetCase):
    """Return (dX_t, level block, short-run block) over the effective sample."""
    n = X.shape[0]
    dX = np.diff(X, axis=0)  # row i is X[i+1] - X[i]
    t_idx = np.arange(lags_diff + 1, n)  # positions of the effective observations
    dep = dX[t_idx - 1]
    level = [X[t_idx - 1]]
    if case is DetCase.CASE2:
        level.append(np.ones((t_idx.size, 1)))
    elif case is DetCase.CASE4:
        level.append(t_idx[:, None].astype(float))
    short = [dX[t_idx - 1 - i] for i in range(1, lags_diff + 1)]
    if case in (DetCase.CASE3, DetCase.CASE4):
        short.append(np.ones((t_idx.size, 1)))
    Z2 = np.hstack(short) if short else np.empty((t_idx.size, 0))
    return dep, np.hstack(level), Z2


def _residualize(Y: np.ndarray, Z: np.ndarray) -> np.ndarray:
    if Z.shape[1] == 0:
        return Y.copy()
    q, r = np.linalg.qr(Z)
    d = np.abs(np.diag(r))
    if d.min() <= 1e-10 * d.max():
        raise RankDeficient("short-run regressors are collinear")
    return Y - q @ (q.T @ Y)


def concentrate(panel, lags_diff: int = 1, case=DetCase.CASE4) -> MomentMatrices:
    """Concentration regressions and product-moment matrices.

    ``R0`` holds residuals of ``dX_t`` and ``R1`` those of the lagged level
    vector (augmented with the restricted deterministic term), both after
    projecting on the lagged differences and unrestricted deterministics.
    """
    case = DetCase.parse(case)
    X = panel.data if isinstance(panel, Panel) else np.asarray(panel, dtype=float)
    if lags_diff < 0:
        raise ValueError("lags_diff must be >= 0")
    n, k = X.shape
    n_det = 1
    if n <= k * lags_diff + n_det + 10:
        raise TooShort(f"{n} observations is too short for k={k}, lags_diff={lags_diff}")
    dep, Z1, Z2 = _lagged_blocks(X, lags_diff, case)
    T = dep.shape[0]
    R0 = _residualize(dep, Z2)
    R1 = _residualize(Z1, Z2)
    S00 = R0.T @ R0 / T
    S11 = R1.T @ R1 / T
    S01 = R0.T @ R1 / T
    return MomentMatrices(S00, S01, S01.T.copy(), S11, T, R0, R1)


def _cholesky(a: np.ndarray, name: str) -> np.ndarray:
    try:
        return linalg.cholesky(a, lower=True)
    except linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"{name} is not positive definite") from exc


def solve_eigen(m: MomentMatrices):
    """Eigenvalues of ``S11^{-1} S10 S00^{-1} S01`` via the Cholesky factor of S11.

    With ``S11 = L L'`` the problem becomes the symmetric eigenproblem of
    ``L^{-1} S10 S00^{-1} S01 L^{-T}``. Eigenvalues come back in descending
    order and eigenvectors ``v`` satisfy ``v' S11 v = 1``.
    """
    L = _cholesky(m.S11, "S11")
    L00 = _cholesky(m.S00, "S00")
    # S10 S00^{-1} S01 = C' C with C = L00^{-1} S01
    C = linalg.solve_triangular(L00, m.S01, lower=True)
    D = linalg.solve_triangular(L, C.T, lower=True)  # L^{-1} S10 L00^{-T}
    A = D @ D.T
    A = 0.5 * (A + A.T)
    w, W = np.linalg.eigh(A)
    order = np.argsort(w)[::-1]
    w = np.clip(w[order], 0.0, None)
    V = linalg.solve_triangular(L.T, W[:, order], lower=False)
    # fix the sign so the largest-magnitude entry of each vector is positive
    signs = np.sign(V[np.argmax(np.abs(V), axis=0), np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return w, V * signs


def statistics(eigenvalues, T: int):
    """Max-eigenvalue and trace statistics for hypothesised ranks 0..k-1."""
    lam = np.asarray(eigenvalues, dtype=float)
    terms = -T * np.log1p(-lam)
    trace = np.cumsum(terms[::-1])[::-1]
    return terms, trace


def select_rank(stats, critical_values) -> int:
    """Sequential test: the first hypothesised rank that is not rejected."""
    stats = np.asarray(stats, dtype=float)
    cvs = np.asarray(critical_values, dtype=float)
    if stats.shape != cvs.shape:
        raise ValueError("statistics and critical values must have equal length")
    for r, (s, c) in enumerate(zip(stats, cvs)):
        if s <= c:
            return r
    return stats.size


def johansen_test(panel, lags_diff: int = 1, case=DetCase.CASE4) -> CointegrationResult:
    case = DetCase.parse(case)
    m = concentrate(panel, lags_diff, case)
    k = m.S00.shape[0]
    if k > len(MAX_EIG_CV_5PCT[case]):
        raise ValueError(f"critical values are tabulated for up to {len(MAX_EIG_CV_5PCT[case])} variables")
    lam, V = solve_eigen(m)
    lam, V = lam[:k], V[:, :k]
    max_s, trace_s = statistics(lam, m.T_effective)
    cv_max = np.array([critical_value(case, k - r, "max") for r in range(k)])
    cv_tr = np.array([critical_value(case, k - r, "trace") for r in range(k)])
    names, sample = (), ()
    if isinstance(panel, Panel):
        names = tuple(panel.names)
        sample = (panel.start_year + lags_diff + 1, panel.end_year)
    return CointegrationResult(
        eigenvalues=lam,
        eigenvectors=V,
        max_stats=max_s,
        trace_stats=trace_s,
        critical_values_5pct=cv_max,
        trace_critical_values_5pct=cv_tr,
        selected_rank_max=select_rank(max_s, cv_max),
        selected_rank_trace=select_rank(trace_s, cv_tr),
        T_effective=m.T_effective,
        det_case=case,
        lags_diff=lags_diff,
        names=names,
        sample=sample,
    )
