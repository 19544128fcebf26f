"""Synthetic data-generating processes for validation and Monte Carlo work.

All generators take an explicit seed. Batch helpers derive one child seed per
replication from the master seed, so results do not depend on how the
replications are scheduled.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import BadSpec
from .johansen import DetCase
from .series import Panel
from .vecm import VecmModel, simulate_vecm

__all__ = ["DgpSpec", "simulate", "simulate_panel", "to_csv", "spawn_seeds", "monte_carlo", "parse_matrix"]

KINDS = ("random-walks", "common-trend", "stationary-var")
_KIND_ALIASES = {
    "random-walks": "random-walks",
    "random-walk": "random-walks",
    "rw": "random-walks",
    "independent-random-walks": "random-walks",
    "common-trend": "common-trend",
    "vecm": "common-trend",
    "rank-r": "common-trend",
    "stationary-var": "stationary-var",
    "var": "stationary-var",
}


def parse_matrix(text: str) -> np.ndarray:
    """``"1,-1"`` -> column vector; ``"0.5,0;0,0.5"`` -> 2x2 (rows split on ``;``)."""
    try:
        rows = [[float(v) for v in row.split(",") if v.strip()] for row in text.split(";") if row.strip()]
    except ValueError as exc:
        raise BadSpec(f"cannot parse matrix {text!r}") from exc
    if not rows or len({len(r) for r in rows}) != 1:
        raise BadSpec(f"ragged or empty matrix {text!r}")
    arr = np.array(rows)
    return arr.T if arr.shape[0] == 1 else arr


@dataclass(frozen=True, eq=False)
class DgpSpec:
    """Data-generating process.

    ``random-walks``: ``k`` independent Gaussian random walks.
    ``common-trend``: ``dX_t = alpha beta' X_{t-1} + e_t`` with rank-r
    ``alpha`` and ``beta`` (k x r).
    ``stationary-var``: ``X_t = A X_{t-1} + e_t`` (default ``A = 0.5 I``).
    Shocks are standard normal scaled by ``shock_scale``.
    """

    kind: str
    k: int = 2
    alpha: np.ndarray | None = None
    beta: np.ndarray | None = None
    A: np.ndarray | None = None
    names: tuple = ()
    shock_scale: float = 1.0
    burn_in: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        kind = _KIND_ALIASES.get(str(self.kind).lower())
        if kind is None:
            raise BadSpec(f"unknown DGP {self.kind!r}; expected one of {', '.join(KINDS)}")
        object.__setattr__(self, "kind", kind)
        k = self.k
        if kind == "common-trend":
            if self.alpha is None or self.beta is None:
                raise BadSpec("common-trend DGP needs alpha and beta")
            a = np.asarray(self.alpha, dtype=float)
            b = np.asarray(self.beta, dtype=float)
            a = a[:, None] if a.ndim == 1 else a
            b = b[:, None] if b.ndim == 1 else b
            if a.shape != b.shape:
                raise BadSpec(f"alpha {a.shape} and beta {b.shape} must have equal shapes")
            k = a.shape[0]
            object.__setattr__(self, "alpha", a)
            object.__setattr__(self, "beta", b)
        elif kind == "stationary-var":
            A = 0.5 * np.eye(k) if self.A is None else np.atleast_2d(np.asarray(self.A, dtype=float))
            if A.shape[0] != A.shape[1]:
                raise BadSpec("VAR coefficient matrix must be square")
            if np.max(np.abs(np.linalg.eigvals(A))) >= 1:
                raise BadSpec("stationary-var DGP needs all eigenvalues of A inside the unit circle")
            k = A.shape[0]
            object.__setattr__(self, "A", A)
        if k < 1:
            raise BadSpec("k must be >= 1")
        object.__setattr__(self, "k", int(k))
        names = tuple(self.names) or tuple(f"x{i + 1}" for i in range(k))
        if len(names) != k:
            raise BadSpec(f"{len(names)} names given for {k} variables")
        object.__setattr__(self, "names", names)


def simulate(spec: DgpSpec, n: int, seed) -> np.ndarray:
    """An ``(n, k)`` sample from ``spec``; identical seeds give identical draws."""
    if n < 2:
        raise BadSpec("n must be >= 2")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    total = n + spec.burn_in
    eps = spec.shock_scale * rng.standard_normal((total, spec.k))
    if spec.kind == "random-walks":
        X = np.cumsum(eps, axis=0)
    elif spec.kind == "common-trend":
        model = VecmModel(alpha=spec.alpha, beta=spec.beta, case=DetCase.CASE3)
        X = simulate_vecm(model, eps[:1], eps[1:])
    else:
        X = np.zeros_like(eps)
        X[0] = eps[0]
        for t in range(1, total):
            X[t] = spec.A @ X[t - 1] + eps[t]
    return X[spec.burn_in :]


def simulate_panel(spec: DgpSpec, n: int, seed, start_year: int = 1900) -> Panel:
    return Panel.from_array(simulate(spec, n, seed), spec.names, start_year)


def to_csv(panel: Panel) -> str:
    """Render ``panel`` in the ingestion CSV format; floats keep full precision."""
    buf = io.StringIO()
    buf.write(",".join(["year", *panel.names]) + "\n")
    data = panel.data
    for year, row in zip(panel.years, data):
        buf.write(",".join([str(int(year)), *(repr(float(v)) for v in row)]) + "\n")
    return buf.getvalue()


def spawn_seeds(seed: int, reps: int) -> list:
    """Independent per-replication generators derived from one master seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(reps)]


def monte_carlo(fn, reps: int, seed: int, workers: int | None = None) -> list:
    """``[fn(rng_0), ..., fn(rng_{reps-1})]`` in replication order."""
    rngs = spawn_seeds(seed, reps)
    if not workers or workers <= 1:
        return [fn(r) for r in rngs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, rngs))
