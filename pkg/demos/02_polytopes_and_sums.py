"""Lattice polytopes, duality and integer decomposition.

Run: python3 demos/02_polytopes_and_sums.py
"""

from torichyp import LatticePolytope, face_fan, minkowski_cover
from torichyp.divisors import canonical_divisor, polytope_of
from torichyp.fixtures import hirzebruch

# Reflexive triangle, its polar, and the fan over its faces (P^2 again).
tri = LatticePolytope.from_points([(1, 0), (0, 1), (-1, -1)])
print("reflexive:", tri.is_reflexive())
print("polar vertices:", [tuple(int(x) for x in v) for v in tri.polar().vertices])
print("face fan:", face_fan(tri).cones)

# Interior points of 8 * triangle: the genus of a plane octic.
octic = LatticePolytope([((1, 0), 0), ((0, 1), 0), ((-1, -1), 8)])
print("interior points of 8Δ:", octic.count_interior_lattice_points())

# Every point of P_{3L} splits as a point of P_{2L} plus a point of P_L.
F1 = hirzebruch(1)
L = -canonical_divisor(F1)
ok, witness = minkowski_cover(polytope_of(3 * L), polytope_of(2 * L), polytope_of(L))
print("F1: P(3L) = P(2L) + P(L) on lattice points:", ok)

# A segment of length 2 is not covered by {0} + {0}; the witness is the first miss.
seg = LatticePolytope([((1,), 0), ((-1,), 2)])
pt = LatticePolytope([((1,), 0), ((-1,), 0)])
print("segment cover:", minkowski_cover(seg, pt, pt))
