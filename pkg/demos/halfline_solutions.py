"""Explicit half-line solutions of the model pencil and their norms.

Run as:  python3 demos/halfline_solutions.py
"""

import math

import numpy as np

from pencilab import (boundary_defect, e1_pencil, eval_deriv, group_roots,
                      l2_norm_deriv, solve, split_by_group, tau_roots)

p = e1_pencil()          # |xi|^2 (|xi|^2 + lambda^2), m = 2, mu = 1
xi_prime = np.array([1.0])
lam = 10.0

rs = tau_roots(p, xi_prime, lam)
print("upper roots of A(xi', tau, lambda):",
      [f"{r:.6f}" for r in rs.upper])

sols = solve(p, xi_prime, lam)
for sol in sols:
    print(f"\nw_{sol.j}: boundary defect {boundary_defect(sol):.2e}")
    for term in sol.terms:
        print(f"  exp(i t ({term.tau:.4f})) with coefficients {term.poly}")

# The exact closed form for comparison: with a = |xi'|, b = sqrt(lam^2 + 1),
# w_1(t) = (b e^{-at} - a e^{-bt})/(b - a).
a, b = 1.0, math.sqrt(lam ** 2 + 1.0)
t = 0.7
closed = (b * math.exp(-a * t) - a * math.exp(-b * t)) / (b - a)
print(f"\nw_1({t}) = {eval_deriv(sols[0], 0, t).real:.10f} "
      f"(closed form {closed:.10f})")

# Exact L2 norms of derivatives come from the Gram formula, no quadrature.
print("\nnorms ||D^l w_j|| on the half-line:")
for sol in sols:
    row = [l2_norm_deriv(sol, l) for l in range(3)]
    print(f"  j = {sol.j}: " + "  ".join(f"{v:10.5f}" for v in row))

# Splitting by root groups separates the boundary layer (root of size
# O(lambda)) from the slowly decaying part (root near i|xi'|).
g = group_roots(p, xi_prime, lam)
w1, w2 = split_by_group(sols[0], g)
print("\nsplit of w_1: bounded-group part decays like exp(-|xi'| t),")
print("large-group part like exp(-lambda t):")
for tt in (0.0, 0.2, 1.0):
    print(f"  t = {tt}: {eval_deriv(w1, 0, tt).real:9.5f} "
          f"+ {eval_deriv(w2, 0, tt).real:9.5f} "
          f"= {eval_deriv(sols[0], 0, tt).real:9.5f}")
