"""
Classifying integration orders with the ADF test
=================================================

Before fitting a cointegrated system every variable should be I(1): its level
has a unit root, its first difference does not. This demo simulates one
series of each kind and lets ``integration_order`` sort them out.
"""

import numpy as np

from cointkit import AdfSpec, adf_test, integration_order

rng = np.random.default_rng(0)
n = 200

# A stationary AR(1), a random walk, and a twice-cumulated random walk.
e = rng.standard_normal((3, n))
ar1 = np.zeros(n)
for t in range(1, n):
    ar1[t] = 0.3 * ar1[t - 1] + e[0, t]
walk = np.cumsum(e[1])
i2 = np.cumsum(np.cumsum(e[2]))

###############################################################################
# A single ADF regression: lag length picked by the Schwarz criterion over
# 0..floor((n-1)^(1/3)), critical values from the MacKinnon response surfaces.

res = adf_test(walk, AdfSpec("constant", criterion="SC"))
print(f"random walk: t = {res.t_statistic:.3f}, lags = {res.chosen_lags}")
for level, cv in res.critical_values.items():
    print(f"  {level:>4} critical value {cv:.3f}  reject: {res.reject_unit_root[level]}")

###############################################################################
# The classifier tests the level, then the first and second differences.

for name, series in [("AR(1), phi = 0.3", ar1), ("random walk", walk), ("double cumsum", i2)]:
    print(f"{name:18s} -> {integration_order(series).order}")

###############################################################################
# With a trend in the test regression, adding a + b*t to the series changes
# nothing: the deterministic terms absorb it exactly.

spec = AdfSpec("constant+trend")
shifted = walk + 50.0 + 0.8 * np.arange(n)
print(adf_test(walk, spec).t_statistic, adf_test(shifted, spec).t_statistic)
