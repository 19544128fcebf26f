"""
Size and power by simulation
============================

How often does the max-eigenvalue test pick the right rank? Replications get
independent child seeds from one master seed, so the answer does not depend
on how many workers run them.
"""

import numpy as np

from cointkit import johansen_test
from cointkit.simulate import DgpSpec, monte_carlo, simulate_panel

REPS = 200


def rank_of(spec):
    def one(rng):
        return johansen_test(simulate_panel(spec, 500, rng)).selected_rank_max

    return np.array(monte_carlo(one, REPS, seed=123, workers=4))


cointegrated = DgpSpec("common-trend", alpha=[-0.5, 0.0], beta=[1.0, -1.0])
walks = DgpSpec("random-walks", k=3)

r1 = rank_of(cointegrated)
r0 = rank_of(walks)
print(f"rank-1 system: rank 1 chosen in {np.mean(r1 == 1):.1%} of {REPS} runs")
print(f"random walks:  rank 0 chosen in {np.mean(r0 == 0):.1%} of {REPS} runs")

###############################################################################
# Same master seed again: identical draws.

print("reproducible:", np.array_equal(r1, rank_of(cointegrated)))
