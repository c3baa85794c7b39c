"""Sums of powers and of exponentials through the sawtooth expansion.

Run: python3 demos/classical_sums.py
"""
import math

from sigeml import PolynomialMap, classical_eml, faulhaber_exact, generalized_eml, line_path

N = 10
for q in range(6):
    rep = generalized_eml(PolynomialMap.power(q), None, line_path(1.0, N), "backward", q + 1)
    print(
        f"sum_(k<{N}) k^{q} = {rep.lhs[0]:.1f}   expansion {rep.rhs[0]:.10f}   "
        f"Faulhaber {faulhaber_exact(q, N)}   remainder {rep.remainder[0]:.1e}"
    )

for m in (2, 4, 6):
    rep = classical_eml([math.exp] * (m + 1), 5, m, "backward")
    print(f"exp, N=5, m={m}: sum {rep.lhs[0]:.10f}  integral+corrections {rep.rhs[0] - rep.remainder[0]:.10f}  "
          f"remainder {rep.remainder[0]: .3e}  residual {rep.residual:.1e}")
