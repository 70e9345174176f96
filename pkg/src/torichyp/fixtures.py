"""Named fans used throughout the tests, demos and the ``fixtures`` CLI command."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .divisors import Divisor, invariant_curve_degree, prime_divisor
from .fan import Fan, walls


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = list(combinations(range(n + 1), n))
    return Fan(rays, cones, name=f"P{n}")


def p2() -> Fan:
    return projective_space(2)


def p3() -> Fan:
    return projective_space(3)


def hirzebruch(a: int) -> Fan:
    """F_a with rays (1,0), (0,1), (-1,a), (0,-1)."""
    return Fan([(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)], name=f"F{a}")


def product_of_projective_spaces(n1: int, n2: int) -> Fan:
    """P^n1 x P^n2; rays of the first factor come first."""
    f1, f2 = projective_space(n1), projective_space(n2)
    rays = [r + (0,) * n2 for r in f1.rays] + [(0,) * n1 + r for r in f2.rays]
    cones = [c1 + tuple(n1 + 1 + i for i in c2) for c1, c2 in product(f1.cones, f2.cones)]
    return Fan(rays, cones, name=f"P{n1}xP{n2}")


def p1xp1() -> Fan:
    return Fan([(1, 0), (0, 1), (-1, 0), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)], name="P1xP1")


def weighted_plane(c: int) -> Fan:
    """The weighted plane with rays (1,0), (0,1), (-1,-c): P(1,1,c) up to reordering weights."""
    return Fan([(1, 0), (0, 1), (-1, -c)], [(0, 1), (1, 2), (0, 2)], name=f"P(1,1,{c})")


def quadric_cone() -> Fan:
    """Projective cone over the quadric surface: one square cone plus four simplices.

    This is the face fan of the square pyramid with apex (0, 0, -1); it is
    Gorenstein Fano and not Q-factorial.
    """
    rays = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, -1)]
    cones = [(0, 1, 2, 3), (0, 1, 4), (1, 2, 4), (2, 3, 4), (0, 3, 4)]
    return Fan(rays, cones, name="quadric_cone")


def x1_fan() -> Fan:
    """P(O + O(2)) over P^2: base rays lifted, plus the two section rays (0,0,+-1)."""
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, 2), (0, 0, 1), (0, 0, -1)]
    cones = [(0, 1, 3), (0, 1, 4), (1, 2, 3), (1, 2, 4), (0, 2, 3), (0, 2, 4)]
    return Fan(rays, cones, name="X1")


def x2_fan() -> Fan:
    """Blow-up of P^3 at a fixed point p, then along an invariant line C in the exceptional plane.

    Rays: e1, e2, e3, -e1-e2-e3, the first exceptional ray (1,1,1) (whose
    strict transform is D) and the second exceptional ray (2,1,1) = (1,1,1) + e1.
    The geometric description is sometimes written Bl_C(Bl_p P^2); it has to be P^3
    for a 3-fold.
    """
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (1, 1, 1), (2, 1, 1)]
    cones = [(1, 4, 5), (0, 1, 5), (2, 4, 5), (0, 2, 5), (1, 2, 4), (0, 1, 3), (1, 2, 3), (0, 2, 3)]
    return Fan(rays, cones, name="X2")


def self_intersection_on_lines(fan: Fan, ray: int) -> set[int]:
    """Degrees of D_ray on the invariant curves lying inside D_ray (smooth 3-folds)."""
    d = prime_divisor(fan, ray)
    return {invariant_curve_degree(d, w) for w in walls(fan) if ray in w.rays}


@dataclass(frozen=True)
class ExampleFixture:
    """A smooth Fano 3-fold with a P^2 divisor D such that L + D fails to be nef.

    ``basis`` maps parameter names to divisors; a polarization is the
    integer combination of the basis with the given parameters.
    """

    name: str
    fan: Fan
    d_ray: int
    basis: tuple[tuple[str, Divisor], ...]

    def polarization(self, *params: int) -> Divisor:
        if len(params) != len(self.basis):
            raise ValueError(f"{self.name} takes {len(self.basis)} parameters")
        total = Divisor(self.fan, (0,) * len(self.fan.rays))
        for k, (_, div) in zip(params, self.basis):
            total = total + k * div
        return total


def x1() -> ExampleFixture:
    """X1 with D the section of normal degree -2, found by computing wall degrees."""
    fan = x1_fan()
    sections = [i for i in (3, 4) if self_intersection_on_lines(fan, i) == {-2}]
    if len(sections) != 1:
        raise AssertionError(f"expected one (-2)-section, found {sections}")
    d = sections[0]
    # pi^* of a line: the lift of a base ray
    return ExampleFixture("X1", fan, d, (("alpha", prime_divisor(fan, d)), ("b", prime_divisor(fan, 0))))


def x2() -> ExampleFixture:
    fan = x2_fan()
    d = fan.rays.index((1, 1, 1))
    if self_intersection_on_lines(fan, d) != {-2}:
        raise AssertionError("strict transform of the first exceptional plane should have normal degree -2")
    gamma = fan.rays.index((0, 1, 0))  # pullback of a line under the P^1-bundle X -> P^2
    e = fan.rays.index((2, 1, 1))
    basis = (("alpha", prime_divisor(fan, d)), ("beta", prime_divisor(fan, gamma)), ("gamma", prime_divisor(fan, e)))
    return ExampleFixture("X2", fan, d, basis)


FIXTURES = {
    "P2": p2,
    "P3": p3,
    "P1xP1": p1xp1,
    "F0": lambda: hirzebruch(0),
    "F1": lambda: hirzebruch(1),
    "F2": lambda: hirzebruch(2),
    "F3": lambda: hirzebruch(3),
    "F4": lambda: hirzebruch(4),
    "F5": lambda: hirzebruch(5),
    "P112": lambda: weighted_plane(2),
    "P113": lambda: weighted_plane(3),
    "quadric_cone": quadric_cone,
    "X1": x1_fan,
    "X2": x2_fan,
}


def get_fixture(name: str) -> Fan:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None
