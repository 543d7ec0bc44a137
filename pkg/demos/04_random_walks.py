"""
Random walks on point sets
==========================

Drive the induced walk on pairs of dyadics with a lazy translation measure,
compare the empirical law against the exact one, and watch two walks that
start apart forget where they came from.
"""

from fractions import Fraction

from liouville import IDENTITY, T, Dyadic, PointSet, ProbMeasure, invert, simulate
from liouville.walks import FunctionTable, exact_law, exact_tv, harmonicity_residual

mu = ProbMeasure(((IDENTITY, Fraction(1, 2)), (T, Fraction(1, 4)), (invert(T), Fraction(1, 4))),
                 symmetric=True, description="lazy translation")
x = PointSet([Dyadic(0, 0), Dyadic(1, 0)])
y = PointSet([Dyadic(1, 0), Dyadic(2, 0)])

# %% Exact laws after k steps and their total variation distance.
for k in (4, 16, 64):
    tv = exact_tv(exact_law(mu, x, k), exact_law(mu, y, k))
    print(f"k={k:3d}  exact TV = {float(tv):.4f}")

# %% Sampling: Philox streams per block make the counts worker-independent.
d1 = simulate(mu, x, 16, trials=20_000, seed=1)
d2 = simulate(mu, x, 16, trials=20_000, seed=1, workers=2)
print("same counts with 1 or 2 workers:", d1.counts == d2.counts)

# %% Constants are harmonic; a bump at x is not.
bump = FunctionTable({x: Fraction(1)})
print("residual of bump at x:", harmonicity_residual(bump, mu, x))
