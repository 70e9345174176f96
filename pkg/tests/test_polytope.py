from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_points, hull_vertices, minkowski_oracle
from torichyp.divisors import canonical_divisor, polytope_of, prime_divisor
from torichyp.fan import is_complete
from torichyp.fixtures import get_fixture, p2
from torichyp.polytope import LatticePolytope, OriginNotInterior, Unbounded, face_fan, minkowski_cover


def simplex(k):
    return LatticePolytope([((1, 0), 0), ((0, 1), 0), ((-1, -1), k)])


def test_dilated_triangle_counts():
    P = simplex(4)
    assert P.count_lattice_points() == 15
    assert set(P.interior_lattice_points) == {(1, 1), (1, 2), (2, 1)}
    assert simplex(8).count_interior_lattice_points() == 21


def test_unbounded_is_rejected():
    P = LatticePolytope([((1, 0), 0), ((0, 1), 0)])
    with pytest.raises(Unbounded):
        P.count_lattice_points()


def test_empty_polytope():
    P = LatticePolytope([((1,), -1), ((-1,), 0)])  # m >= 1 and m <= 0
    assert P.is_empty and P.count_lattice_points() == 0


def test_reflexive_simplex_and_polar():
    P = LatticePolytope.from_points([(1, 0), (0, 1), (-1, -1)])
    assert P.is_reflexive()
    assert set(P.polar().vertices) == {(Fraction(-1), Fraction(-1)), (Fraction(-1), Fraction(2)), (Fraction(2), Fraction(-1))}


def test_polar_needs_interior_origin():
    P = LatticePolytope.from_points([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(OriginNotInterior):
        P.polar()


def test_non_reflexive_detected():
    P = LatticePolytope.from_points([(1, 0), (0, 1), (-3, -1)])
    assert not P.is_reflexive()
    with pytest.raises(ValueError):
        face_fan(P)


pts3 = st.lists(st.tuples(*(st.integers(-3, 3),) * 3), min_size=5, max_size=12)


@settings(max_examples=40, deadline=None)
@given(pts3)
def test_vertices_match_qhull(points):
    arr = np.array(points)
    if np.linalg.matrix_rank(arr[1:] - arr[0]) < 3:
        return
    P = LatticePolytope.from_points(points)
    ours = sorted(tuple(int(x) for x in v) for v in P.vertices)
    assert ours == hull_vertices(points)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), st.integers(0, 4)),
                min_size=1, max_size=4))
def test_lattice_points_match_brute_force(extra):
    # a box plus random extra halfspaces keeps things bounded
    hs = [((1, 0, 0), 3), ((-1, 0, 0), 3), ((0, 1, 0), 3), ((0, -1, 0), 3), ((0, 0, 1), 3), ((0, 0, -1), 3)]
    hs += [(u, a) for u, a in extra if any(u)]
    P = LatticePolytope(hs)
    expect = brute_points(hs, [(-3, 3)] * 3)
    assert sorted(P.lattice_points) == sorted(expect)
    inner = brute_points([(u, a - 1) for u, a in hs], [(-3, 3)] * 3)
    assert P.count_interior_lattice_points() == len(inner)


def test_large_offsets_use_exact_scan():
    P = LatticePolytope([((1,), 0), ((-1,), 2**63)])
    assert P.count_lattice_points() == 2**63 + 1


def test_minkowski_cover_simplex():
    ok, witness = minkowski_cover(simplex(4), simplex(3), simplex(1))
    assert ok and witness is None


def test_minkowski_cover_failure_witness():
    seg = LatticePolytope([((1,), 0), ((-1,), 2)])
    dots = LatticePolytope([((1,), 0), ((-1,), 0)])
    ok, witness = minkowski_cover(seg, dots, dots)
    assert not ok and witness == (1,)


@pytest.mark.parametrize("name", ["F1", "P1xP1", "X1"])
def test_minkowski_cover_matches_set_oracle(name):
    fan = get_fixture(name)
    K = canonical_divisor(fan)
    L = -K if name != "X1" else prime_divisor(fan, 3) + 3 * prime_divisor(fan, 0)
    big, a, b = polytope_of(3 * L), polytope_of(2 * L), polytope_of(L)
    assert minkowski_cover(big, a, b)[0] == minkowski_oracle(big.lattice_points, a.lattice_points, b.lattice_points)


def test_face_fan_of_cube_octahedron():
    octa = LatticePolytope.from_points([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    fan = face_fan(octa)
    assert len(fan.cones) == 8 and is_complete(fan)
    cube = LatticePolytope.from_points(list(product((-1, 1), repeat=3)))
    fan = face_fan(cube)
    assert len(fan.rays) == 8 and len(fan.cones) == 6 and is_complete(fan)


def test_face_fan_of_simplex_is_p2():
    fan = face_fan(LatticePolytope.from_points([(1, 0), (0, 1), (-1, -1)]))
    assert fan == p2()
