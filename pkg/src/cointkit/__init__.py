"""cointkit: unit roots, Johansen cointegration, VECM estimation and Cholesky FEVD."""

__version__ = "0.1.0"

from .errors import CointkitError, DataError, NumericalError  # noqa: E402
from .johansen import (  # noqa: E402
    CointegrationResult,
    DetCase,
    concentrate,
    johansen_test,
    select_rank,
    solve_eigen,
    statistics,
)
from .ols import (  # noqa: E402
    breusch_godfrey,
    chi_sq_survival,
    jarque_bera,
    ols_fit,
    white_test,
    white_test_system,
)
from .series import Panel, TimeSeries, TransformSpec, align, period_stats, transform  # noqa: E402
from .unitroot import AdfSpec, adf_test, integration_order  # noqa: E402
from .var import LevelVar, fevd, irf, ma_coefficients, vecm_to_var  # noqa: E402
from .vecm import (  # noqa: E402
    VecmModel,
    adjustment_speed,
    equation_view,
    estimate_vecm,
    normalize_beta,
    validate_ecm,
)

__all__ = [
    "CointkitError",
    "DataError",
    "NumericalError",
    "CointegrationResult",
    "DetCase",
    "concentrate",
    "johansen_test",
    "select_rank",
    "solve_eigen",
    "statistics",
    "breusch_godfrey",
    "chi_sq_survival",
    "jarque_bera",
    "ols_fit",
    "white_test",
    "white_test_system",
    "Panel",
    "TimeSeries",
    "TransformSpec",
    "align",
    "period_stats",
    "transform",
    "AdfSpec",
    "adf_test",
    "integration_order",
    "LevelVar",
    "fevd",
    "irf",
    "ma_coefficients",
    "vecm_to_var",
    "VecmModel",
    "adjustment_speed",
    "equation_view",
    "estimate_vecm",
    "normalize_beta",
    "validate_ecm",
]
