import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from cointkit.errors import RankDeficient, TooFewObservations
from cointkit.ols import (
    breusch_godfrey,
    chi_sq_survival,
    jarque_bera,
    ols_fit,
    white_auxiliary_terms,
    white_test,
    white_test_system,
)


def normal_equations(X, y):
    """Textbook oracle: solve X'X b = X'y and compute the centred R^2."""
    b = np.linalg.solve(X.T @ X, X.T @ y)
    e = y - X @ b
    r2 = 1.0 - (e @ e) / np.sum((y - y.mean()) ** 2)
    return b, r2


def design(rng, n, k):
    return np.column_stack([np.ones(n), rng.standard_normal((n, k - 1))])


# ---------------------------------------------------------------- ols_fit


def test_exact_fit():
    X = np.column_stack([np.ones(5), np.arange(5.0)])
    fit = ols_fit(X, 2.0 + 3.0 * np.arange(5.0))
    np.testing.assert_allclose(fit.coefficients, [2.0, 3.0], atol=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    np.testing.assert_allclose(fit.residuals, 0.0, atol=1e-12)


def test_intercept_only_gives_mean():
    y = np.array([3.0, 1.0, 4.0, 1.0, 5.0, 9.0])
    fit = ols_fit(np.ones((6, 1)), y)
    assert fit.coefficients[0] == pytest.approx(y.mean())
    assert fit.r_squared == 0.0


def test_random_problem_matches_normal_equations(rng):
    X = design(rng, 20, 3)
    y = X @ np.array([1.0, -2.0, 0.5]) + rng.standard_normal(20)
    fit = ols_fit(X, y)
    b, r2 = normal_equations(X, y)
    np.testing.assert_allclose(fit.coefficients, b, atol=1e-10)
    assert abs(fit.r_squared - r2) < 1e-10
    # standard errors: sigma^2 (X'X)^-1
    s2 = fit.rss / (20 - 3)
    np.testing.assert_allclose(fit.std_errors, np.sqrt(np.diag(s2 * np.linalg.inv(X.T @ X))), rtol=1e-9)


def test_rank_deficient_and_short_designs():
    X = np.column_stack([np.ones(10), np.arange(10.0), 2 * np.arange(10.0)])
    with pytest.raises(RankDeficient):
        ols_fit(X, np.arange(10.0))
    with pytest.raises(TooFewObservations):
        ols_fit(np.ones((2, 2)), np.ones(2))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(8, 60), k=st.integers(1, 5))
def test_residuals_orthogonal_to_regressors(seed, n, k):
    r = np.random.default_rng(seed)
    X = design(r, n, k)
    y = r.standard_normal(n) * 10
    fit = ols_fit(X, y)
    scale = np.linalg.norm(X, axis=0) * np.linalg.norm(y)
    assert np.all(np.abs(X.T @ fit.residuals) <= 1e-9 * scale)
    assert 0.0 <= fit.r_squared <= 1.0 + 1e-12


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_adding_a_regressor_never_lowers_r_squared(seed):
    r = np.random.default_rng(seed)
    X = design(r, 30, 4)
    y = r.standard_normal(30)
    assert ols_fit(X, y).r_squared >= ols_fit(X[:, :3], y).r_squared - 1e-12


# ------------------------------------------------------- chi-square tail


def test_chi_sq_anchors():
    assert abs(chi_sq_survival(26.93, 25) - 0.3594) <= 5e-4
    assert abs(chi_sq_survival(9.71, 10) - 0.4663) <= 5e-4
    assert chi_sq_survival(0.0, 7) == 1.0
    assert chi_sq_survival(2.0, 2) == pytest.approx(math.exp(-1.0), abs=1e-15)


def _chi2_tail_by_quadrature(x, df):
    def pdf(t):
        return math.exp((df / 2 - 1) * math.log(t) - t / 2 - (df / 2) * math.log(2) - math.lgamma(df / 2))

    if x == 0:
        return 1.0
    head, _ = integrate.quad(pdf, 0.0, x, limit=200, epsabs=1e-13, epsrel=1e-12)
    return 1.0 - head


@pytest.mark.parametrize("df", [1, 2, 5, 10, 25])
def test_chi_sq_matches_quadrature(df):
    for x in np.linspace(0.0, 4.0 * df + 20.0, 50):
        assert abs(chi_sq_survival(x, df) - _chi2_tail_by_quadrature(x, df)) <= 1e-6


@given(x=st.floats(0, 500), dx=st.floats(0, 50), df=st.integers(1, 400))
def test_chi_sq_is_monotone_and_bounded(x, dx, df):
    a, b = chi_sq_survival(x, df), chi_sq_survival(x + dx, df)
    assert 0.0 <= b <= a <= 1.0


def test_chi_sq_rejects_bad_input():
    with pytest.raises(ValueError):
        chi_sq_survival(-1.0, 3)
    with pytest.raises(ValueError):
        chi_sq_survival(1.0, 0)


# ----------------------------------------------------------- Jarque-Bera


def test_jarque_bera_hand_vector():
    # [-1, 0, 1, 0, -1, 1] repeated: mean 0, m2 = m4 = 2/3, m3 = 0, kurtosis 1.5
    # JB = 12/6 * (0 + (1.5 - 3)^2 / 4) = 1.125
    res = jarque_bera(np.tile([-1.0, 0.0, 1.0, 0.0, -1.0, 1.0], 2))
    assert res.statistic == pytest.approx(1.125, abs=1e-12)
    assert res.df == 2
    assert res.p_value == pytest.approx(math.exp(-0.5625), abs=1e-12)


def test_jarque_bera_zero_for_mesokurtic_symmetric_sample():
    # [-a, 0, 0, 0, 0, a]: m2 = a^2/3, m4 = a^4/3 -> kurtosis exactly 3, skew 0
    res = jarque_bera(np.tile([-2.5, 0.0, 0.0, 0.0, 0.0, 2.5], 2))
    assert res.statistic == pytest.approx(0.0, abs=1e-12)
    assert res.p_value == pytest.approx(1.0, abs=1e-12)


def test_jarque_bera_matches_scipy(rng):
    x = rng.standard_t(5, size=200)
    assert jarque_bera(x).statistic == pytest.approx(stats.jarque_bera(x).statistic, rel=1e-10)


def test_jarque_bera_system_degrees_of_freedom(rng):
    u = rng.standard_normal((100, 3))
    res = jarque_bera(u)
    assert res.df == 6
    assert 0.0 <= res.p_value <= 1.0


def test_jarque_bera_system_sums_components_for_uncorrelated_columns():
    # columns with exactly zero sample covariance and equal variance:
    # the Cholesky whitening only rescales, so the statistic is additive
    base = np.array([-1.0, 0.0, 1.0, 0.0, -1.0, 1.0, 2.0, -2.0])
    other = np.array([1.0, -1.0, 0.0, 2.0, 0.0, -2.0, 0.0, 0.0])
    base = base - base.mean()
    other = other - other.mean()
    other = other - (other @ base) / (base @ base) * base
    u = np.column_stack([base, other])
    expected = jarque_bera(base).statistic + jarque_bera(other).statistic
    assert jarque_bera(u).statistic == pytest.approx(expected, rel=1e-9)


# -------------------------------------------------------- serial correlation


def _ar_residuals(rng, n, k, phi):
    e = rng.standard_normal((n, k))
    u = np.zeros_like(e)
    u[0] = e[0]
    for t in range(1, n):
        u[t] = phi * u[t - 1] + e[t]
    return u


def test_breusch_godfrey_size_and_power():
    rng = np.random.default_rng(7)
    pvals = []
    for _ in range(200):
        Z = design(rng, 100, 3)
        u = rng.standard_normal((100, 2))
        pvals.append(breusch_godfrey(u, Z, h=1).p_value)
    assert np.median(pvals) > 0.05

    Z = design(rng, 100, 3)
    assert breusch_godfrey(_ar_residuals(rng, 100, 2, 0.9), Z, h=1).p_value < 0.01


def test_breusch_godfrey_df_and_single_equation_form(rng):
    Z = design(rng, 80, 2)
    u = rng.standard_normal((80, 3))
    assert breusch_godfrey(u, Z, h=2).df == 2 * 9
    # single equation: T * R^2 of the auxiliary regression
    y = Z @ np.array([1.0, 0.5]) + _ar_residuals(rng, 80, 1, 0.4)[:, 0]
    e = ols_fit(Z, y).residuals
    aux = np.column_stack([Z, np.r_[0.0, e[:-1]]])
    expected = 80 * ols_fit(aux, e).r_squared
    assert breusch_godfrey(e, Z, h=1).statistic == pytest.approx(expected, rel=1e-9)


# -------------------------------------------------------- heteroskedasticity


def test_white_size_and_power():
    rng = np.random.default_rng(11)
    pvals = []
    for _ in range(200):
        x = rng.standard_normal((100, 2))
        pvals.append(white_test(rng.standard_normal(100), x).p_value)
    assert np.median(pvals) > 0.3

    x = rng.standard_normal((500, 1))
    u = x[:, 0] * rng.standard_normal(500)
    assert white_test(u, x).p_value < 0.01


def test_white_auxiliary_terms_count(rng):
    X = np.column_stack([np.ones(50), rng.standard_normal((50, 3))])
    assert white_auxiliary_terms(X).shape[1] == 3 + 6
    assert white_auxiliary_terms(X, cross_terms=False).shape[1] == 3 + 3


def test_white_drops_collinear_terms_with_warning(rng):
    d = (rng.random(60) > 0.5).astype(float)  # dummy: d^2 == d
    with pytest.warns(RuntimeWarning, match="collinear"):
        aux = white_auxiliary_terms(np.column_stack([d, rng.standard_normal(60)]))
    assert aux.shape[1] == 4


def test_white_system_degrees_of_freedom(rng):
    # five residual series and six non-constant regressors:
    # 15 unique cross products x (6 levels + 21 squares/cross products)
    Z = np.column_stack([rng.standard_normal((120, 6)), np.ones(120)])
    u = rng.standard_normal((120, 5))
    res = white_test_system(u, Z)
    assert res.df == 405
    assert abs(chi_sq_survival(413.61, res.df) - 0.373) <= 5e-4
    # the alternative count of 408 does not reproduce the reported probability
    assert abs(chi_sq_survival(413.61, 408) - 0.373) > 0.03


def test_white_system_single_series_matches_univariate(rng):
    x = rng.standard_normal((90, 2))
    u = rng.standard_normal(90) * (1 + np.abs(x[:, 0]))
    assert white_test_system(u, x).statistic == pytest.approx(white_test(u, x).statistic, rel=1e-9)
