"""
Success probability of a tagged transmission
============================================

Compare the closed forms with a Monte Carlo run that draws concrete
neighbour patterns from an orthogonal family.
"""

from dail import AnalyticalParams, VARIANTS, collision_bounds, success_probability
from dail.oracle import OracleConfig, monte_carlo_lambda

# per-superframe bounds on collisions for Q neighbours and K slots
for Q in (5, 12, 20):
    print(f"Q={Q:2d}, K=12 -> bounds {collision_bounds(Q, 12)}")

p = AnalyticalParams(Q=3, M=4, K=4, omega=0.5, m=3)
est, se = monte_carlo_lambda(OracleConfig(p, trials=400_000, seed=0))
print(f"\nMonte Carlo: {est:.5f} +- {1.96 * se:.5f}")

# the literal double sum runs high; the exact form tracks the simulation.
# the strict form is allowed to leave [0, 1], so skip the range check
for v in VARIANTS:
    lam = success_probability(p, v, check=False)
    print(f"{v:<11}{lam:9.5f}   {(lam - est) / se:+8.1f} se")

# how the exact form falls with the number of neighbours for 16 channels, 12 slots and m = 16
for Q in (0, 12, 36, 72, 144):
    lam = success_probability(AnalyticalParams(Q, 16, 12, 0.5, 16), "exact")
    print(f"Q={Q:3d}  lambda={lam:.4f}")
