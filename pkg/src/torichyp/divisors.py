"""Torus-invariant divisors on complete fans.

A divisor is a vector of integer coefficients, one per ray.  Classes only
enter through explicit characters: ``D1 - D2 = div(chi^m)``.

Conventions: the section polytope is ``P_D = {m : <m, u_rho> >= -a_rho}``
and Cartier data satisfy ``<m_sigma, u_rho> = -a_rho`` for ``rho`` in
``sigma``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Sequence

from .fan import Fan, StarFan, Wall, _memo, is_complete, is_smooth, star_fan
from .lattice import DualSolution, NoSolution, RationalVector, Vector, integral_solution, pairing, solve_dual
from .polytope import LatticePolytope

log = logging.getLogger(__name__)


class NotCartier(ValueError):
    """The divisor has no (integral) local character on some maximal cone."""

    def __init__(self, divisor: "Divisor", cone_index: int, reason: str = "non-integral"):
        self.divisor = divisor
        self.cone_index = cone_index
        self.reason = reason
        cone = divisor.fan.cones[cone_index]
        super().__init__(f"divisor {list(divisor.coefficients)} is not Cartier on cone {cone_index} {cone} ({reason})")


class RequiresSmoothComplete(ValueError):
    pass


@dataclass(frozen=True)
class Divisor:
    fan: Fan
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coefficients)
        if len(coeffs) != len(self.fan.rays):
            raise ValueError(f"{len(coeffs)} coefficients for a fan with {len(self.fan.rays)} rays")
        object.__setattr__(self, "coefficients", coeffs)

    def _check(self, other: "Divisor") -> None:
        if other.fan != self.fan:
            raise ValueError("divisors live on different fans")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.fan, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.fan, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "Divisor":
        return Divisor(self.fan, tuple(-a for a in self.coefficients))

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.fan, tuple(k * a for a in self.coefficients))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Divisor({list(self.coefficients)})"

    def plus_character(self, m: Sequence) -> tuple:
        """Coefficients of ``D + div(chi^m)``; rational if ``m`` is."""
        return tuple(a + pairing(m, u) for a, u in zip(self.coefficients, self.fan.rays))

    @cached_property
    def _local(self):
        """Per-cone rational local data, or the index of the first inconsistent cone."""
        out = []
        for k, cone in enumerate(self.fan.cones):
            values = [-self.coefficients[i] for i in cone]
            inverse = _cone_inverse(self.fan, k)
            if inverse is not None:
                coords = tuple(sum((b * x for b, x in zip(values, row)), Fraction(0)) for row in inverse)
                out.append(DualSolution(coords, all(c.denominator == 1 for c in coords)))
                continue
            try:
                sol = solve_dual(self.fan.ray_vectors(cone), values)
            except NoSolution:
                return k, None
            out.append(sol)
        return None, tuple(out)

    @property
    def is_cartier(self) -> bool:
        bad, local = self._local
        return bad is None and all(s.integral for s in local)

    @property
    def is_qcartier(self) -> bool:
        return self._local[0] is None


@_memo
def _cone_inverse(fan: Fan, k: int):
    """Rows of U^-1 for a full-dimensional simplicial cone with ray matrix U, else None."""
    cone = fan.cones[k]
    if len(cone) != fan.dim:
        return None
    vecs = fan.ray_vectors(cone)
    try:
        cols = [solve_dual(vecs, [int(i == j) for j in range(len(cone))]).coords for i in range(len(cone))]
    except NoSolution:
        return None
    # m = sum_i b_i * col_i, so coordinate r of m pairs row r of the transpose with b
    return tuple(tuple(col[r] for col in cols) for r in range(fan.dim))


def prime_divisor(fan: Fan, ray: int, coefficient: int = 1) -> Divisor:
    return Divisor(fan, tuple(coefficient if i == ray else 0 for i in range(len(fan.rays))))


def zero_divisor(fan: Fan) -> Divisor:
    return Divisor(fan, (0,) * len(fan.rays))


def canonical_divisor(fan: Fan) -> Divisor:
    return Divisor(fan, (-1,) * len(fan.rays))


@dataclass(frozen=True)
class CartierData:
    """Local characters ``m_sigma``, one per maximal cone (same order as ``fan.cones``).

    ``index`` is the least k with k*D Cartier (1 for Cartier divisors).
    """

    divisor: Divisor
    local: tuple[RationalVector, ...]
    index: int = 1

    def integral_local(self) -> tuple[Vector, ...]:
        if self.index != 1:
            raise ValueError("divisor is only Q-Cartier")
        return tuple(tuple(int(x) for x in m) for m in self.local)


def cartier_data(divisor: Divisor, rational: bool = False) -> CartierData:
    """Cartier data of ``divisor``; with ``rational=True`` accept Q-Cartier data.

    Raises :class:`NotCartier` naming the first failing cone.
    """
    bad, local = divisor._local
    if bad is not None:
        raise NotCartier(divisor, bad, "inconsistent: not Q-Cartier")
    index = 1
    for k, sol in enumerate(local):
        if not sol.integral:
            if not rational:
                raise NotCartier(divisor, k)
            for x in sol.coords:
                index = lcm(index, x.denominator)
    return CartierData(divisor, tuple(s.coords for s in local), index)


def _convexity(divisor: Divisor, strict: bool, rational: bool) -> bool:
    fan = divisor.fan
    if not is_complete(fan):
        raise ValueError("nefness is only decided here on complete fans")
    try:
        data = cartier_data(divisor, rational=rational)
    except NotCartier as exc:
        log.debug("convexity test on non-Cartier divisor: %s", exc)
        return False
    a = divisor.coefficients
    for cone, m in zip(fan.cones, data.local):
        for rho, u in enumerate(fan.rays):
            if rho in cone:
                continue
            val = pairing(m, u)
            if val < -a[rho] or (strict and val == -a[rho]):
                return False
    return True


def is_nef(divisor: Divisor, rational: bool = False) -> bool:
    """Support-function convexity: ``<m_sigma, u_rho> >= -a_rho`` for rho outside sigma."""
    return _convexity(divisor, strict=False, rational=rational)


def is_ample(divisor: Divisor, rational: bool = False) -> bool:
    return _convexity(divisor, strict=True, rational=rational)


def polytope_of(divisor: Divisor) -> LatticePolytope:
    fan = divisor.fan
    return LatticePolytope([(u, a) for u, a in zip(fan.rays, divisor.coefficients)])


def h0(divisor: Divisor) -> int:
    """Dimension of the space of global sections: lattice points of P_D."""
    if not is_complete(divisor.fan):
        raise ValueError("h0 is computed only on complete fans")
    return polytope_of(divisor).count_lattice_points()


def invariant_curve_degree(divisor: Divisor, wall: Wall) -> int:
    """Intersection number of ``divisor`` with the invariant curve of ``wall``.

    With adjacent cones sigma, sigma' and u' the ray of sigma' off the wall,
    the degree is <m_sigma - m_sigma', u'>; this makes ample divisors positive
    (H . line = 1 on P^2).
    """
    fan = divisor.fan
    if not (is_smooth(fan) and is_complete(fan)):
        raise RequiresSmoothComplete("invariant curve degrees need a smooth complete fan")
    data = cartier_data(divisor)
    k1, k2 = wall.cones
    m1, m2 = data.local[k1], data.local[k2]
    (u_off,) = [fan.rays[i] for i in fan.cones[k2] if i not in wall.rays]
    return int(pairing([x - y for x, y in zip(m1, m2)], u_off))


@dataclass(frozen=True)
class DivisorClassWitness:
    """``first - second = div(chi^character)``."""

    character: RationalVector

    @property
    def integral(self) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.character)


def linear_equivalence(d1: Divisor, d2: Divisor, rational: bool = False) -> DivisorClassWitness | None:
    """A character witnessing ``d1 ~ d2`` (``~_Q`` if ``rational``), or None."""
    d1._check(d2)
    fan = d1.fan
    diff = [a - b for a, b in zip(d1.coefficients, d2.coefficients)]
    try:
        sol = solve_dual(list(fan.rays), diff)
    except NoSolution:
        return None
    if not sol.integral and not rational:
        return None
    return DivisorClassWitness(sol.coords)


def is_gorenstein(fan: Fan) -> bool:
    return canonical_divisor(fan).is_cartier


def is_gorenstein_fano(fan: Fan) -> bool:
    return is_gorenstein(fan) and is_ample(-canonical_divisor(fan))


@dataclass(frozen=True)
class Restriction:
    """``divisor`` on ``star.fan`` representing E|_{V(rho)}; ``shift`` is the character used."""

    divisor: Divisor
    star: StarFan
    shift: Vector


def restrict_to_invariant_divisor(divisor: Divisor, ray: int, star: StarFan | None = None) -> Restriction:
    """Restrict a Cartier divisor to the invariant divisor of ``ray``.

    ``divisor`` is first moved by ``div(chi^m)`` so its ``ray`` coefficient is
    zero; its local data on cones through ``ray`` then descend to the star fan.
    The result is well defined up to linear equivalence.
    """
    fan = divisor.fan
    if not is_complete(fan):
        raise ValueError("restriction is computed only on complete fans")
    data = cartier_data(divisor)
    if star is None:
        star = star_fan(fan, ray)
    u = fan.rays[ray]
    shift = integral_solution(u, -divisor.coefficients[ray])
    coeffs: list[int | None] = [None] * len(star.fan.rays)
    for cone_index in fan.cones_containing(ray):
        m = [x - y for x, y in zip(data.local[cone_index], shift)]
        if pairing(m, u) != 0:
            raise AssertionError("shifted local datum does not vanish on the ray")
        for j in fan.cones[cone_index]:
            s = star.ray_map.get(j)
            if s is None:
                continue
            val = -pairing(m, star.lifts[s])
            if Fraction(val).denominator != 1:
                raise AssertionError("restricted coefficient is not integral")
            if coeffs[s] is None:
                coeffs[s] = int(val)
            elif coeffs[s] != val:
                raise AssertionError("local data disagree on a shared face")
    return Restriction(Divisor(star.fan, tuple(coeffs)), star, shift)
