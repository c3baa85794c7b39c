"""Riemann-Stieltjes sums along a random walk versus the integral plus corrections.

Each printed row adds one more correction level; the gap to the sum is the
remainder. The integrand here is quadratic, so from m = 3 on the corrections
reproduce the sum exactly.

Run: python3 demos/random_walk_sums.py
"""
from sigeml import PolynomialMap, generalized_eml
from sigeml.sampling import random_ensemble

ens = random_ensemble(seed=3, n_paths=40, horizon=6, dim=2)
X = ens.paths[0]
# f = grad of x1^2 x2 + x2^3 / 3
f = PolynomialMap.gradient(2, {(2, 1): 1.0, (0, 3): 1.0 / 3.0})

for direction in ("backward", "forward"):
    print(direction)
    for m in range(1, 6):
        rep = generalized_eml(f, None, X, direction, m, ensemble=ens)
        partial = rep.rhs - rep.remainder
        print(
            f"  m={m}: sum {rep.lhs[0]: .6f}  integral+corrections {partial[0]: .6f}  "
            f"remainder {rep.remainder[0]: .2e}  identity residual {rep.residual:.1e}"
        )
