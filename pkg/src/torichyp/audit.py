"""Hyperbolicity audits for adjoint linear systems on toric varieties.

Every audit checks the computable hypotheses and consequences of the
hyperbolicity results for ``|N + 2nL|`` and ``|K + (3n+1)L|`` and packages
them into a :class:`HyperbolicityCertificate`.  Nothing here proves
hyperbolicity of arbitrary curves; a ``Hyperbolic`` verdict means every step
the argument needs has been verified exactly on the given input.

Bound encoded by the certificate: for curves ``C`` covered by the verdict,
``2g(C) - 2 >= epsilon * (L . C)`` with ``epsilon`` relative to ``L``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .divisors import (
    Divisor,
    Restriction,
    canonical_divisor,
    cartier_data,
    h0,
    invariant_curve_degree,
    is_ample,
    is_gorenstein,
    is_nef,
    linear_equivalence,
    polytope_of,
    prime_divisor,
    restrict_to_invariant_divisor,
)
from .fan import Fan, is_complete, is_projective_space, is_simplicial, is_smooth, small_qfactorialization, walls
from .fixtures import ExampleFixture, x1, x2
from .polytope import minkowski_cover

log = logging.getLogger(__name__)

HYPERBOLIC = "Hyperbolic"
PSEUDO = "PseudoHyperbolicModulo"
NOT_CERTIFIED = "NotCertified"


class RequiresNef(ValueError):
    pass


class NotFound(RuntimeError):
    pass


@dataclass(frozen=True)
class Verdict:
    kind: str
    rays: tuple[int, ...] = ()
    reason: str = ""

    def __str__(self):
        if self.kind == PSEUDO:
            return f"{PSEUDO}({list(self.rays)})"
        if self.kind == NOT_CERTIFIED:
            return f"{NOT_CERTIFIED}({self.reason})"
        return self.kind


def not_certified(reason: str) -> Verdict:
    return Verdict(NOT_CERTIFIED, reason=reason)


@dataclass(frozen=True)
class GenusEntry:
    path: tuple[int, ...]  # rays followed down the recursion; () is the top level
    genus: int


@dataclass(frozen=True)
class SurjectivityCheck:
    """h0(E), h0(E - D_rho) and h0(D_rho, E|D_rho); surjective iff they balance."""

    ray: int
    h0_total: int
    h0_twisted: int
    h0_restricted: int
    via_qfactorialization: bool = False
    path: tuple[int, ...] = ()
    restriction: Restriction | None = field(default=None, compare=False, repr=False)

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.h0_total, self.h0_twisted, self.h0_restricted

    @property
    def balanced(self) -> bool:
        return self.h0_total - self.h0_twisted == self.h0_restricted


@dataclass(frozen=True)
class GenusResult:
    divisor: Divisor
    genus: int
    basepoint_free: bool

    @property
    def at_least_two(self) -> bool:
        return self.genus >= 2


@dataclass(frozen=True)
class HyperbolicityCertificate:
    variety: str
    polarization: tuple[int, ...]
    nef_part: tuple[int, ...]
    verdict: Verdict
    epsilon: Fraction | None = None
    reference: str = "L"
    exceptional_rays: tuple[int, ...] = ()
    genus_table: tuple[GenusEntry, ...] = ()
    surjectivity_log: tuple[SurjectivityCheck, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def hyperbolic(self) -> bool:
        return self.verdict.kind == HYPERBOLIC

    @property
    def certified(self) -> bool:
        return self.verdict.kind != NOT_CERTIFIED

    def leaf_genera(self) -> list[int]:
        return [g.genus for g in self.genus_table]


def _refuse(fan: Fan, L: Divisor | None, N: Divisor | None, reason: str, **kw) -> HyperbolicityCertificate:
    return HyperbolicityCertificate(
        variety=fan.name,
        polarization=L.coefficients if L is not None else (),
        nef_part=N.coefficients if N is not None else (),
        verdict=not_certified(reason),
        **kw,
    )


# --- building blocks ------------------------------------------------------


def fujita_nef_check(fan: Fan, L: Divisor, multiplier: int) -> bool:
    """Whether ``K + multiplier * L`` is nef."""
    return is_nef(canonical_divisor(fan) + multiplier * L)


def exceptional_set(fan: Fan, L: Divisor) -> list[int]:
    """Rays rho for which ``L + D_rho`` is not nef."""
    rational = is_simplicial(fan)
    return [rho for rho in range(len(fan.rays)) if not is_nef(L + prime_divisor(fan, rho), rational=rational)]


def _hypotheses(fan: Fan, N: Divisor, L: Divisor) -> str | None:
    if not is_complete(fan):
        return "fan is not complete"
    if not is_gorenstein(fan):
        return "variety is not Gorenstein"
    if not N.is_cartier:
        return "N is not Cartier"
    if not is_nef(N):
        return "N is not nef"
    if not L.is_cartier:
        return "L is not Cartier"
    if not is_ample(L):
        return "L is not ample"
    return None


def pseudo_hyperbolicity_certificate(fan: Fan, N: Divisor, L: Divisor) -> HyperbolicityCertificate:
    """Pseudo hyperbolicity of ``|N + 2nL|`` modulo the boundary, sharpened when smooth.

    Smooth fans are certified modulo the exceptional set; an empty exceptional
    set upgrades the verdict to ``Hyperbolic``.  Singular Gorenstein fans are
    certified modulo every invariant divisor.
    """
    failed = _hypotheses(fan, N, L)
    if failed:
        return _refuse(fan, L, N, failed)
    if is_smooth(fan):
        exc = tuple(exceptional_set(fan, L))
        verdict = Verdict(HYPERBOLIC) if not exc else Verdict(PSEUDO, exc)
        notes = ()
    else:
        exc = tuple(range(len(fan.rays)))
        verdict = Verdict(PSEUDO, exc)
        notes = ("singular: certified modulo the toric boundary; epsilon is relative to L pulled back "
                 "to a resolution, which is not constructed",)
    return HyperbolicityCertificate(
        variety=fan.name,
        polarization=L.coefficients,
        nef_part=N.coefficients,
        verdict=verdict,
        epsilon=Fraction(1),
        exceptional_rays=exc,
        notes=notes,
    )


def restriction_surjectivity(fan: Fan, E: Divisor, ray: int, path: tuple[int, ...] = ()) -> SurjectivityCheck:
    """Compare h0(E) - h0(E - D) with h0(D, E|D) for D the divisor of ``ray``.

    The left side counts the lattice points of P_E on the facet hyperplane of
    ``ray``; the right side is counted independently on the star fan.  When D
    is not Q-Cartier the restriction is taken on a small Q-factorialization,
    which has the same rays and hence the same section polytopes.
    """
    if not E.is_cartier:
        cartier_data(E)  # raises NotCartier with the failing cone
    total = h0(E)
    twisted = h0(E - prime_divisor(fan, ray))
    via = False
    work = fan
    if not prime_divisor(fan, ray).is_qcartier:
        work = small_qfactorialization(fan)
        if not prime_divisor(work, ray).is_qcartier:
            raise AssertionError("strict transform should be Q-Cartier on a simplicial fan")
        via = True
    res = restrict_to_invariant_divisor(Divisor(work, E.coefficients), ray)
    restricted = h0(res.divisor)
    return SurjectivityCheck(ray, total, twisted, restricted, via, path, res)


def surface_general_member_genus(fan: Fan, D: Divisor) -> GenusResult:
    """Genus of a general member of a nef divisor on a complete toric surface.

    Counted as the interior lattice points of P_D.  Nef Cartier divisors on
    complete toric varieties are base point free.
    """
    if fan.dim != 2 or not is_complete(fan):
        raise ValueError("need a complete fan of rank 2")
    if not is_nef(D):
        raise RequiresNef(f"{D} is not nef")
    g = polytope_of(D).count_interior_lattice_points()
    return GenusResult(D, g, basepoint_free=True)


def adjunction_genus(D: Divisor) -> Fraction:
    """(K + D).D / 2 + 1 on a smooth complete surface, via wall degrees."""
    fan = D.fan
    if fan.dim != 2:
        raise ValueError("adjunction genus is computed on surfaces")
    K = canonical_divisor(fan)
    total = 0
    for w in walls(fan):
        (rho,) = w.rays
        total += (K.coefficients[rho] + D.coefficients[rho]) * invariant_curve_degree(D, w)
    return Fraction(total, 2) + 1


def multiplication_surjectivity(fan: Fan, N: Divisor, L: Divisor) -> tuple[bool, bool]:
    """Lattice-point form of the two multiplication maps into |N + 2nL| and |N + (2n+1)L|."""
    if not (is_smooth(fan) and is_complete(fan)):
        raise ValueError("multiplication maps are checked on smooth complete fans")
    n = fan.dim
    pl = polytope_of(L)
    first, _ = minkowski_cover(polytope_of(N + 2 * n * L), polytope_of(N + (2 * n - 1) * L), pl)
    second, _ = minkowski_cover(polytope_of(N + (2 * n + 1) * L), polytope_of(N + 2 * n * L), pl)
    return first, second


@dataclass(frozen=True)
class EffectiveWitness:
    """``coefficients`` = N + L_1 + ... + L_k + div(chi^character), all >= 1."""

    coefficients: tuple[Fraction, ...]
    character: tuple[Fraction, ...]
    boundary_rays: tuple[int, int]


def effective_decomposition_witness(fan: Fan, N: Divisor, Ls: Sequence[Divisor]) -> EffectiveWitness:
    """Effective invariant divisor Q-equivalent to ``N + sum(Ls)`` with every coefficient >= 1.

    Construction: a vertex of P_{L_1} vanishes on two rays
    T_1, T_2 of one cone and is positive elsewhere; points of the polytopes of
    the nef Q-divisors ``L_2 + L_3 - T_1`` and ``L_4 + L_5 - T_2`` cover T_1
    and T_2.  Cones are tried in order until one works.
    """
    if fan.dim != 2 or not is_complete(fan):
        raise ValueError("need a complete fan of rank 2")
    if is_projective_space(fan):
        raise ValueError("P^2 is excluded")
    if len(Ls) < 5:
        raise ValueError("need at least five ample divisors")
    if not (N.is_cartier and is_nef(N)):
        raise ValueError("N must be nef Cartier")
    if not all(L.is_cartier and is_ample(L) for L in Ls):
        raise ValueError("every L_i must be ample Cartier")
    total = N
    for L in Ls:
        total = total + L

    def some_point(D: Divisor):
        verts = polytope_of(D).vertices
        return verts[0] if verts else None

    base = some_point(N)
    rest = [some_point(L) for L in Ls[5:]]
    if base is None or any(p is None for p in rest):
        raise NotFound("a nef summand has an empty polytope")
    l1 = cartier_data(Ls[0])
    for k, cone in enumerate(fan.cones):
        t1, t2 = cone
        p3 = some_point(Ls[1] + Ls[2] - prime_divisor(fan, t1))
        p4 = some_point(Ls[3] + Ls[4] - prime_divisor(fan, t2))
        if p3 is None or p4 is None:
            continue
        parts = [base, l1.local[k], p3, p4, *rest]
        m = tuple(sum((p[i] for p in parts), Fraction(0)) for i in range(fan.dim))
        coeffs = tuple(Fraction(a) for a in total.plus_character(m))
        if min(coeffs) >= 1:
            return EffectiveWitness(coeffs, m, (t1, t2))
    raise NotFound("no cone gave a decomposition with all coefficients >= 1")


# --- audits ---------------------------------------------------------------


def hyperbolicity_audit(fan: Fan, N: Divisor, L: Divisor, _path: tuple[int, ...] = ()) -> HyperbolicityCertificate:
    """Audit ``|N + 2nL|`` on a smooth complete fan by induction on dimension.

    In dimension 2 the general member must have genus >= 2.  Above that, every
    invariant divisor D must receive a surjective restriction of sections and
    pass the same audit for ``N' = (N + 2L)|D`` and ``L' = L|D``, so that
    ``(N + 2nL)|D = N' + 2(n-1)L'``.
    """
    n = fan.dim
    if n < 2:
        return _refuse(fan, L, N, "dimension must be at least 2")
    if not (is_smooth(fan) and is_complete(fan)):
        return _refuse(fan, L, N, "fan is not smooth and complete")
    pseudo = pseudo_hyperbolicity_certificate(fan, N, L)
    if not pseudo.certified:
        return pseudo
    E = N + 2 * n * L
    if n == 2:
        res = surface_general_member_genus(fan, E)
        ok = res.at_least_two
        verdict = Verdict(HYPERBOLIC) if ok else not_certified(f"general member has genus {res.genus} < 2")
        return HyperbolicityCertificate(
            variety=fan.name,
            polarization=L.coefficients,
            nef_part=N.coefficients,
            verdict=verdict,
            epsilon=Fraction(1) if ok else None,
            exceptional_rays=pseudo.exceptional_rays,
            genus_table=(GenusEntry(_path, res.genus),),
        )
    genera: list[GenusEntry] = []
    log_entries: list[SurjectivityCheck] = []
    failures: list[str] = []
    eps = Fraction(1)
    for rho in range(len(fan.rays)):
        check = restriction_surjectivity(fan, E, rho, path=_path)
        log_entries.append(check)
        if not check.balanced:
            failures.append(f"restriction to ray {rho} is not surjective {check.triple}")
        star = check.restriction.star
        n_res = restrict_to_invariant_divisor(N + 2 * L, rho, star=star).divisor
        l_res = restrict_to_invariant_divisor(L, rho, star=star).divisor
        if linear_equivalence(check.restriction.divisor, n_res + 2 * (n - 1) * l_res) is None:
            failures.append(f"restricted system on ray {rho} does not split as N' + 2(n-1)L'")
        sub = hyperbolicity_audit(star.fan, n_res, l_res, _path + (rho,))
        genera.extend(sub.genus_table)
        log_entries.extend(sub.surjectivity_log)
        if not sub.hyperbolic:
            failures.append(f"divisor of ray {rho}: {sub.verdict}")
        elif sub.epsilon is not None:
            eps = min(eps, sub.epsilon)
    verdict = Verdict(HYPERBOLIC) if not failures else not_certified("; ".join(failures))
    return HyperbolicityCertificate(
        variety=fan.name,
        polarization=L.coefficients,
        nef_part=N.coefficients,
        verdict=verdict,
        epsilon=eps if not failures else None,
        exceptional_rays=pseudo.exceptional_rays,
        genus_table=tuple(genera),
        surjectivity_log=tuple(log_entries),
    )


def conjecture_audit(fan: Fan, L: Divisor, variant: str = "3n+1") -> HyperbolicityCertificate:
    """Audit ``|K + (3n+1)L|`` (or ``|K + 3nL|`` with ``variant="3n"``) on a smooth fan."""
    n = fan.dim
    if variant == "3n+1":
        c = n + 1
    elif variant == "3n":
        c = n
        if is_projective_space(fan):
            return _refuse(fan, L, None, f"P^{n} exception: K + {n}L is not nef")
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if not L.is_cartier or not is_complete(fan) or not is_ample(L):
        return _refuse(fan, L, None, "L is not an ample Cartier divisor")
    if not fujita_nef_check(fan, L, c):
        return _refuse(fan, L, None, f"K + {c}L is not nef")
    return hyperbolicity_audit(fan, canonical_divisor(fan) + c * L, L)


def gorenstein_3fold_audit(fan: Fan, L: Divisor) -> HyperbolicityCertificate:
    """Audit ``|K + 9L|`` on a Gorenstein toric 3-fold other than P^3.

    Checks (a) pseudo hyperbolicity of ``N + 6L`` with ``N = K + 3L`` nef,
    (b) surjective restriction of sections of ``K + 9L`` to every invariant
    divisor (through a small Q-factorialization when the divisor is not
    Q-Cartier), and (c) genus >= 2 for the general member of the restricted
    system on every invariant surface.  The restricted system is
    ``(K + 4L)|D + 5 L|D`` with ``K + 4L`` base point free.
    """
    if fan.dim != 3:
        return _refuse(fan, L, None, "not a 3-fold")
    if not is_complete(fan):
        return _refuse(fan, L, None, "fan is not complete")
    if is_projective_space(fan):
        return _refuse(fan, L, None, "P3 excluded: the quintic case is treated separately")
    if not is_gorenstein(fan):
        return _refuse(fan, L, None, "variety is not Gorenstein")
    if not L.is_cartier or not is_ample(L):
        return _refuse(fan, L, None, "L is not an ample Cartier divisor")
    K = canonical_divisor(fan)
    N = K + 3 * L
    failures: list[str] = []
    notes: list[str] = []
    if not fujita_nef_check(fan, L, 3):
        failures.append("K + 3L is not nef")
    if not fujita_nef_check(fan, L, 4):
        failures.append("K + 4L is not nef (hence not base point free)")
    pseudo = pseudo_hyperbolicity_certificate(fan, N, L)
    if not pseudo.certified:
        return _refuse(fan, L, N, f"pseudo hyperbolicity step failed: {pseudo.verdict.reason}")
    E = K + 9 * L
    checks, genera = [], []
    for rho in range(len(fan.rays)):
        check = restriction_surjectivity(fan, E, rho)
        checks.append(check)
        if not check.balanced:
            failures.append(f"restriction to ray {rho} is not surjective {check.triple}")
        if check.via_qfactorialization:
            notes.append(f"ray {rho}: restricted through a small Q-factorialization")
        res = check.restriction
        try:
            g = surface_general_member_genus(res.star.fan, res.divisor)
        except RequiresNef:
            failures.append(f"restricted system on ray {rho} is not nef")
            continue
        genera.append(GenusEntry((rho,), g.genus))
        if not g.at_least_two:
            failures.append(f"general member on ray {rho} has genus {g.genus} < 2")
    verdict = Verdict(HYPERBOLIC) if not failures else not_certified("; ".join(failures))
    return HyperbolicityCertificate(
        variety=fan.name,
        polarization=L.coefficients,
        nef_part=N.coefficients,
        verdict=verdict,
        epsilon=Fraction(1) if not failures else None,
        exceptional_rays=pseudo.exceptional_rays,
        genus_table=tuple(genera),
        surjectivity_log=tuple(checks),
        notes=tuple(notes) + pseudo.notes,
    )


# --- arithmetic checks for products -----------------------------------------


def product_adjoint_degrees(n1: int, n2: int) -> tuple[int, int]:
    """Bidegree of ``K + (3n+1)(H1 + H2)`` on P^n1 x P^n2."""
    n = n1 + n2
    return 3 * n + 1 - (n1 + 1), 3 * n + 1 - (n2 + 1)


def product_bound_check(n1: int, n2: int) -> bool:
    """The adjoint bidegree meets the known hyperbolicity bounds for products.

    Projective spaces: ``d_i >= n + n_i - 1``.  Grassmannian products
    (K = -n1 H1 - n2 H2): degrees one higher against ``d_i >= n + n_i - 2``.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("factor dimensions must be positive")
    n = n1 + n2
    d1, d2 = product_adjoint_degrees(n1, n2)
    spaces = d1 == 2 * n + n2 and d2 == 2 * n + n1 and d1 >= n + n1 - 1 and d2 >= n + n2 - 1
    grass = (2 * n + n2 + 1) >= n + n1 - 2 and (2 * n + n1 + 1) >= n + n2 - 2
    return spaces and grass


# --- classification of (X, L, D) with L + D not nef --------------------------


@dataclass(frozen=True)
class ClassificationRow:
    params: tuple[int, ...]
    ample: bool
    restricts_to_line: bool
    l_plus_d_nef: bool | None

    @property
    def admissible(self) -> bool:
        return self.ample and self.restricts_to_line


@dataclass(frozen=True)
class ClassificationTable:
    fixture: str
    box: tuple[tuple[int, int], ...]
    rows: tuple[ClassificationRow, ...]

    @property
    def admissible(self) -> list[tuple[int, ...]]:
        return [r.params for r in self.rows if r.admissible]

    def region_mismatches(self) -> list[tuple[int, ...]]:
        """Parameter tuples where the computed admissibility disagrees with ``stated_region``."""
        return [r.params for r in self.rows if r.admissible != stated_region(self.fixture, r.params)]


def stated_region(fixture: str, params: Sequence[int]) -> bool:
    """Closed-form parameter description of ample L with L|D ~ line, as usually quoted.

    X1: ``L = alpha D + (2 alpha + 1) pi^* line`` with ``alpha >= 1``.
    X2: ``L = alpha D + beta Gamma + (2 alpha - beta + 1) E`` with
    ``alpha, beta >= 1`` and ``2 alpha >= beta > 4 alpha / 3 + 2 / 3``.
    """
    if fixture == "X1":
        a, b = params
        return a >= 1 and b == 2 * a + 1
    if fixture == "X2":
        a, b, g = params
        return a >= 1 and b >= 1 and g == 2 * a - b + 1 and 2 * a >= b and 3 * b > 4 * a + 2
    raise ValueError(f"unknown fixture {fixture!r}")


def _restricts_to_line(res: Restriction) -> bool:
    degrees = {invariant_curve_degree(res.divisor, w) for w in walls(res.star.fan)}
    return degrees == {1}


def example_xld_classify(fixture: str | ExampleFixture, box: Sequence[tuple[int, int]],
                         free_range: tuple[int, int] | None = None) -> ClassificationTable:
    """Tabulate ample L with L|D ~ line over a parameter box.

    ``box`` bounds the leading parameters (alpha for X1; alpha, beta for X2).
    The last basis coefficient is scanned over ``free_range``, by default
    wide enough to contain every value for which L|D can be a line.
    """
    fx = fixture if isinstance(fixture, ExampleFixture) else {"X1": x1, "X2": x2}[fixture]()
    box = tuple((int(lo), int(hi)) for lo, hi in box)
    if len(box) != len(fx.basis) - 1:
        raise ValueError(f"{fx.name} needs bounds for {len(fx.basis) - 1} leading parameters")
    if free_range is None:
        reach = 3 * max(max(abs(lo), abs(hi)) for lo, hi in box) + 3
        free_range = (-reach, reach)
    d_prime = prime_divisor(fx.fan, fx.d_ray)
    rows = []
    for lead in product(*(range(lo, hi + 1) for lo, hi in box)):
        for last in range(free_range[0], free_range[1] + 1):
            params = lead + (last,)
            L = fx.polarization(*params)
            ample = is_ample(L)
            line = _restricts_to_line(restrict_to_invariant_divisor(L, fx.d_ray))
            nef_sum = is_nef(L + d_prime) if ample and line else None
            rows.append(ClassificationRow(params, ample, line, nef_sum))
    return ClassificationTable(fx.name, box, tuple(rows))


__all__ = [
    "HYPERBOLIC",
    "PSEUDO",
    "NOT_CERTIFIED",
    "ClassificationRow",
    "ClassificationTable",
    "EffectiveWitness",
    "GenusEntry",
    "GenusResult",
    "HyperbolicityCertificate",
    "NotFound",
    "RequiresNef",
    "SurjectivityCheck",
    "Verdict",
    "adjunction_genus",
    "conjecture_audit",
    "effective_decomposition_witness",
    "example_xld_classify",
    "exceptional_set",
    "fujita_nef_check",
    "gorenstein_3fold_audit",
    "hyperbolicity_audit",
    "multiplication_surjectivity",
    "product_adjoint_degrees",
    "product_bound_check",
    "pseudo_hyperbolicity_certificate",
    "restriction_surjectivity",
    "stated_region",
    "surface_general_member_genus",
]
