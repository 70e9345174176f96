"""Fano 3-folds with a plane D for which L + D is not nef.

X1 is P(O + O(2)) over the plane.  X2 blows P^3 up at a point and then along
a line in the exceptional plane.  For each we list ample L with L|D a line.

Run: python3 demos/04_divisors_with_nonnef_twist.py
"""

from torichyp.audit import example_xld_classify, exceptional_set
from torichyp.divisors import invariant_curve_degree, prime_divisor
from torichyp.fan import walls
from torichyp.fixtures import x1

fx = x1()
print("X1: the (-2)-section is ray", fx.d_ray, fx.fan.rays[fx.d_ray])
for alpha in (1, 2, 3):
    L = fx.polarization(alpha, 2 * alpha + 1)
    D = prime_divisor(fx.fan, fx.d_ray)
    degs = {invariant_curve_degree(L + D, w) for w in walls(fx.fan) if fx.d_ray in w.rays}
    print(f"  alpha={alpha}: exceptional rays {exceptional_set(fx.fan, L)}, (L+D).line = {degs}")

table = example_xld_classify("X1", [(1, 6)])
print("X1 admissible (alpha, b):", table.admissible)

table = example_xld_classify("X2", [(1, 6), (1, 6)])
print("X2 admissible (alpha, beta, gamma):", table.admissible)
print("X2 points outside the closed-form inequality 2a >= b > 4a/3 + 2/3:", table.region_mismatches())
# The computed region is alpha + 1 < beta <= 2 alpha: ampleness on the twelve
# invariant curves gives beta > alpha + 1, and L|D = line fixes gamma.
