"""
Forecast-error variance decomposition
=====================================

Convert a fitted VECM to its level VAR and decompose each variable's
forecast-error variance into contributions from Cholesky-orthogonalised
shocks. The first variable in the ordering owns 100% of its own one-step
variance by construction.
"""

from pathlib import Path

import numpy as np

import cointkit
from cointkit import estimate_vecm, fevd, irf, vecm_to_var
from cointkit.pipeline import load_dataset
from cointkit.var import companion

panel = load_dataset(Path(cointkit.__file__).parent / "data" / "synthetic_rank1.csv")
model = estimate_vecm(panel, lags_diff=1, r=1)
var = vecm_to_var(model)

###############################################################################
# A VECM with k variables and rank r leaves k - r unit roots in the level VAR.

roots = np.abs(np.linalg.eigvals(companion(var)))
print("unit roots:", int(np.sum(np.abs(roots - 1) < 1e-6)), "expected", model.k - model.r)

###############################################################################
# Decomposition of INFL over five periods.

table = fevd(var, H=5, ordering=panel.names)["INFL"]
print(f"{'Period':>6} {'S.E.':>9} " + " ".join(f"{n:>9}" for n in table.ordering))
for h, se, row in zip(table.horizons, table.se, table.shares):
    print(f"{h:6d} {se:9.4f} " + " ".join(f"{v:9.4f}" for v in row))
print("Cholesky Ordering:", " ".join(table.ordering))

###############################################################################
# The shares are accumulated squared impulse responses, normalised.

theta = irf(var, 5)
num = np.cumsum(theta[:, 0, :] ** 2, axis=0)
print(np.allclose(100 * num / num.sum(axis=1, keepdims=True), table.shares))

###############################################################################
# Reordering moves contemporaneous correlation between shocks.

late = fevd(var, H=5, ordering=["GDP", "TCE", "M2", "DF", "INFL"])["INFL"]
print("INFL own share at horizon 1, ordered first vs last:",
      round(table.shares[0, 0], 2), round(late.shares[0, -1], 2))
