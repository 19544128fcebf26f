from pathlib import Path

import numpy as np
import pytest

from cointkit.series import Panel

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "cointkit" / "data"
BUNDLED_CFG = DATA_DIR / "synthetic_rank1.cfg"
BUNDLED_CSV = DATA_DIR / "synthetic_rank1.csv"

# filled by tests/test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


def common_trend_panel(n, rng, alpha=(-0.5, 0.0), beta=(1.0, -1.0), start_year=1900):
    """dX_t = alpha beta' X_{t-1} + e_t with standard normal shocks."""
    a = np.asarray(alpha, dtype=float)[:, None]
    b = np.asarray(beta, dtype=float)[:, None]
    k = a.shape[0]
    eps = rng.standard_normal((n, k))
    X = np.zeros((n, k))
    X[0] = eps[0]
    for t in range(1, n):
        X[t] = X[t - 1] + (a @ (b.T @ X[t - 1])) + eps[t]
    return Panel.from_array(X, [f"x{i + 1}" for i in range(k)], start_year)


def random_stable_var(rng, k, P, radius=0.9):
    """Random VAR(P) coefficients scaled so the companion spectral radius is ``radius``,
    plus a random positive-definite covariance."""
    A = [rng.standard_normal((k, k)) for _ in range(P)]
    F = np.zeros((k * P, k * P))
    F[:k, :] = np.hstack(A)
    if P > 1:
        F[k:, :-k] = np.eye(k * (P - 1))
    rho = np.max(np.abs(np.linalg.eigvals(F)))
    # scaling A_i by c^i scales every companion root by c
    c = radius / rho
    A = [a * c ** (i + 1) for i, a in enumerate(A)]
    B = rng.standard_normal((k, k))
    sigma = B @ B.T + 0.1 * np.eye(k)
    return A, sigma


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
