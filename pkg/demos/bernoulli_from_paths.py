"""Optimal sawtooth data for straight lines are scaled Bernoulli numbers.

Run: python3 demos/bernoulli_from_paths.py
"""
import math

from sigeml import PathEnsemble, bernoulli_number, line_path, optimal_tensor
from sigeml.sampling import random_ensemble

for lam in (0.5, 1.0, 2.0):
    b = optimal_tensor(PathEnsemble.single(line_path(lam, 1)), "forward", 8)
    print(f"slope {lam}")
    for l in range(1, 9):
        ref = lam**l * float(bernoulli_number(l, "-")) / math.factorial(l)
        print(f"  level {l}: {float(b.levels[l][0]): .15f}   lam^l B_l/l! = {ref: .15f}")

# A random-walk ensemble has its own constants; the odd levels no longer vanish.
b = optimal_tensor(random_ensemble(seed=7, n_paths=50, horizon=4, dim=1), "forward", 6)
print("random walks:", [round(float(b.levels[l][0]), 6) for l in range(1, 7)])
