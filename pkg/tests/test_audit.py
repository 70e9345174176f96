from fractions import Fraction

import pytest

from oracles import adjunction_genus_oracle, brute_h0, sample_divisors, wall_relation_degrees
from torichyp.audit import (
    HYPERBOLIC,
    NOT_CERTIFIED,
    PSEUDO,
    RequiresNef,
    adjunction_genus,
    conjecture_audit,
    effective_decomposition_witness,
    example_xld_classify,
    exceptional_set,
    fujita_nef_check,
    gorenstein_3fold_audit,
    hyperbolicity_audit,
    multiplication_surjectivity,
    product_adjoint_degrees,
    product_bound_check,
    pseudo_hyperbolicity_certificate,
    restriction_surjectivity,
    stated_region,
    surface_general_member_genus,
)
from torichyp.divisors import (
    Divisor,
    canonical_divisor,
    invariant_curve_degree,
    is_ample,
    prime_divisor,
    restrict_to_invariant_divisor,
    zero_divisor,
)
from torichyp.fan import walls
from torichyp.fixtures import get_fixture, hirzebruch, p2, p3, quadric_cone, weighted_plane, x1, x2


def test_p2_quartic_leaf():
    fan = p2()
    H = prime_divisor(fan, 0)
    cert = conjecture_audit(fan, H)
    assert cert.verdict.kind == HYPERBOLIC
    assert cert.leaf_genera() == [3]
    assert cert.epsilon == Fraction(1)


def test_p2_cubic_is_sharp():
    fan = p2()
    H = prime_divisor(fan, 0)
    assert surface_general_member_genus(fan, 3 * H).genus == 1
    # 3H = N + 4L with L = kH ample forces N = (3 - 4k)H, never nef
    for k in range(1, 4):
        cert = hyperbolicity_audit(fan, (3 - 4 * k) * H, k * H)
        assert cert.verdict.kind == NOT_CERTIFIED


def test_pn_refused_for_3n_variant():
    for fan in (p2(), p3()):
        H = prime_divisor(fan, 0)
        assert not fujita_nef_check(fan, H, fan.dim)
        cert = conjecture_audit(fan, H, variant="3n")
        assert cert.verdict.kind == NOT_CERTIFIED and "P^" in cert.verdict.reason


def test_3n_variant_on_non_pn():
    fan = hirzebruch(1)
    L = -canonical_divisor(fan)
    assert conjecture_audit(fan, L, variant="3n").verdict.kind == HYPERBOLIC


def test_delegation_identity():
    fan = hirzebruch(3)
    for L in sample_divisors(fan, is_ample, 3, lo=-2, hi=3, seed=21):
        a = conjecture_audit(fan, L)
        b = hyperbolicity_audit(fan, canonical_divisor(fan) + 3 * L, L)
        assert a == b


def test_p3_restriction_triples_frozen():
    fan = p3()
    H = prime_divisor(fan, 0)
    cert = hyperbolicity_audit(fan, zero_divisor(fan), H)
    assert cert.verdict.kind == HYPERBOLIC
    top = [s for s in cert.surjectivity_log if s.path == ()]
    assert [s.triple for s in top] == [(84, 56, 28)] * 4
    # lattice-count oracle
    assert brute_h0(fan, (6, 0, 0, 0)) == 84 and brute_h0(fan, (5, 0, 0, 0)) == 56
    assert cert.leaf_genera() == [10] * 4  # sextics on each plane: (N'=2H) + 4H


def test_p3_conjecture_triples():
    fan = p3()
    H = prime_divisor(fan, 0)
    s = restriction_surjectivity(fan, canonical_divisor(fan) + 10 * H, 2)
    assert s.triple == (84, 56, 28) and s.balanced
    s = restriction_surjectivity(fan, 5 * H, 0)
    assert s.triple == (56, 35, 21)


def test_left_exactness_on_random_cartier():
    fan = hirzebruch(2)
    for E in sample_divisors(fan, lambda D: True, 30, seed=23):
        for ray in range(4):
            s = restriction_surjectivity(fan, E, ray)
            assert s.h0_total - s.h0_twisted <= s.h0_restricted


def test_x1_gorenstein_audit():
    fx = x1()
    L = fx.polarization(1, 3)
    cert = gorenstein_3fold_audit(fx.fan, L)
    assert cert.verdict.kind == HYPERBOLIC
    assert all(s.balanced for s in cert.surjectivity_log)
    assert cert.exceptional_rays == (fx.d_ray,)
    d_leaf = [g.genus for g in cert.genus_table if g.path == (fx.d_ray,)]
    assert d_leaf == [21]
    res = restrict_to_invariant_divisor(canonical_divisor(fx.fan) + 9 * L, fx.d_ray)
    assert adjunction_genus_oracle(res.star.fan, res.divisor.coefficients) == 21


def test_p3_gorenstein_audit_refused():
    fan = p3()
    cert = gorenstein_3fold_audit(fan, prime_divisor(fan, 0))
    assert cert.verdict.kind == NOT_CERTIFIED and cert.verdict.reason.startswith("P3 excluded")


def test_quadric_cone_routes_through_qfactorialization():
    fan = quadric_cone()
    cert = gorenstein_3fold_audit(fan, -canonical_divisor(fan))
    assert cert.verdict.kind == HYPERBOLIC
    via = {s.ray for s in cert.surjectivity_log if s.via_qfactorialization}
    assert via == {0, 1, 2, 3}
    assert cert.exceptional_rays == tuple(range(5))


def test_pseudo_certificates():
    fan = p2()
    H = prime_divisor(fan, 0)
    cert = pseudo_hyperbolicity_certificate(fan, zero_divisor(fan), H)
    assert cert.verdict.kind == HYPERBOLIC and cert.exceptional_rays == ()
    q = quadric_cone()
    cert = pseudo_hyperbolicity_certificate(q, zero_divisor(q), -canonical_divisor(q))
    assert cert.verdict.kind == PSEUDO and cert.verdict.rays == tuple(range(5))
    w = weighted_plane(3)
    L = Divisor(w, (0, 0, 3))
    cert = pseudo_hyperbolicity_certificate(w, zero_divisor(w), L)
    assert cert.verdict.kind == NOT_CERTIFIED and "Gorenstein" in cert.verdict.reason


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_x1_example(alpha):
    fx = x1()
    fan, d = fx.fan, fx.d_ray
    L = fx.polarization(alpha, 2 * alpha + 1)
    D = prime_divisor(fan, d)
    assert is_ample(L)
    assert exceptional_set(fan, L) == [d]
    for w in walls(fan):
        if d in w.rays:
            assert invariant_curve_degree(L + D, w) == -1
            assert invariant_curve_degree(-canonical_divisor(fan), w) == 1


def test_x1_classification_matches_stated_region():
    table = example_xld_classify("X1", [(1, 5)])
    assert table.admissible == [(a, 2 * a + 1) for a in range(1, 6)]
    assert table.region_mismatches() == []
    assert all(r.l_plus_d_nef is False for r in table.rows if r.admissible)


def test_x2_computed_region():
    table = example_xld_classify("X2", [(1, 6), (1, 6)])
    assert table.admissible == [(2, 4, 1), (3, 5, 2), (3, 6, 1), (4, 6, 3)]
    assert all(r.l_plus_d_nef is False for r in table.rows if r.admissible)


def test_x2_boundary_point_is_ample_by_wall_relations():
    # (4, 6, 3) lies outside the stated region but every curve degree is positive
    fx = x2()
    L = fx.polarization(4, 6, 3)
    degs = wall_relation_degrees(fx.fan, L.coefficients)
    assert min(degs.values()) > 0
    assert not stated_region("X2", (4, 6, 3))


def test_surface_genus_requires_nef():
    fan = p2()
    with pytest.raises(RequiresNef):
        surface_general_member_genus(fan, canonical_divisor(fan))


@pytest.mark.parametrize("name", ["P2", "P1xP1", "F1", "F4"])
def test_genus_matches_adjunction(name):
    fan = get_fixture(name)
    # ample, so the general member is irreducible; nef classes like k*fibre are not
    for D in sample_divisors(fan, is_ample, 15, seed=31):
        g = surface_general_member_genus(fan, D).genus
        assert g == adjunction_genus(D) == adjunction_genus_oracle(fan, D.coefficients)


def test_effective_decomposition_witness():
    fan = hirzebruch(1)
    L = -canonical_divisor(fan)
    N = zero_divisor(fan)
    w = effective_decomposition_witness(fan, N, [L] * 6)
    assert min(w.coefficients) >= 1
    total = 6 * L
    assert tuple(Fraction(a) for a in total.plus_character(w.character)) == w.coefficients
    with pytest.raises(ValueError):
        effective_decomposition_witness(p2(), zero_divisor(p2()), [prime_divisor(p2(), 0)] * 5)
    with pytest.raises(ValueError):
        effective_decomposition_witness(fan, N, [L] * 4)


def test_multiplication_surjectivity_p2():
    fan = p2()
    H = prime_divisor(fan, 0)
    assert multiplication_surjectivity(fan, zero_divisor(fan), H) == (True, True)


@pytest.mark.parametrize("n1, n2", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 5)])
def test_product_bounds(n1, n2):
    n = n1 + n2
    assert product_adjoint_degrees(n1, n2) == (2 * n + n2, 2 * n + n1)
    assert product_bound_check(n1, n2)
