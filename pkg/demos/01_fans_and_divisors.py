"""Fans, divisors and the numbers attached to them.

Run: python3 demos/01_fans_and_divisors.py
"""

from torichyp import canonical_divisor, h0, is_ample, is_nef, prime_divisor, walls
from torichyp.divisors import invariant_curve_degree
from torichyp.fixtures import hirzebruch, p2

# The projective plane: three rays, three smooth cones.
P2 = p2()
H = prime_divisor(P2, 0)
K = canonical_divisor(P2)
print(P2.dumps())

# Sections of dH are the lattice points of a dilated triangle.
for d in range(5):
    print(f"h0({d}H) = {h0(d * H)}")

# Nef and ample are decided by convexity of the support function;
# wall degrees give the same answer curve by curve.
print("K + 3H nef:", is_nef(K + 3 * H), " ample:", is_ample(K + 3 * H))
print("degrees of K on the three lines:", [invariant_curve_degree(K, w) for w in walls(P2)])

# On F_2 the anticanonical divisor is nef but contracts the (-2)-curve.
F2 = hirzebruch(2)
antiK = -canonical_divisor(F2)
print("F2: -K nef", is_nef(antiK), "ample", is_ample(antiK))
print("F2: -K on each invariant curve", {w.rays: invariant_curve_degree(antiK, w) for w in walls(F2)})
