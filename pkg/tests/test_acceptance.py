"""One test per acceptance criterion; each records a PASS/FAIL line for the summary."""

import os
import time
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import adjunction_genus_oracle, brute_h0, sample_divisors, wall_relation_degrees
from torichyp.audit import (
    HYPERBOLIC,
    NOT_CERTIFIED,
    conjecture_audit,
    example_xld_classify,
    exceptional_set,
    fujita_nef_check,
    gorenstein_3fold_audit,
    hyperbolicity_audit,
    multiplication_surjectivity,
    stated_region,
    surface_general_member_genus,
)
from torichyp.divisors import canonical_divisor, h0, invariant_curve_degree, is_ample, is_nef, prime_divisor, zero_divisor
from torichyp.fan import is_projective_space, walls
from torichyp.fixtures import get_fixture, p2, p3, x1
from torichyp.ingest import batch_audit, census_excerpt, emit_report, parse_palp_stream


def record(k, ok, detail):
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
    assert ok, detail


def test_criterion_1_p2_quartic():
    fan = p2()
    H = prime_divisor(fan, 0)
    t = time.perf_counter()
    cert = conjecture_audit(fan, H)
    elapsed = time.perf_counter() - t
    cubic = surface_general_member_genus(fan, 3 * H).genus
    # the only ample L are kH, leaving N = (3 - 4k)H, never nef
    refused = all(hyperbolicity_audit(fan, (3 - 4 * k) * H, k * H).verdict.kind == NOT_CERTIFIED for k in range(1, 4))
    ok = cert.verdict.kind == HYPERBOLIC and cert.leaf_genera() == [3] and elapsed < 1 and cubic == 1 and refused
    record(1, ok, f"|4H| {cert.verdict} genus {cert.leaf_genera()} in {elapsed:.3f}s; g(3H)={cubic}; 3H refused={refused}")


def test_criterion_2_example_reconstruction():
    t = time.perf_counter()
    fx = x1()
    fan, d = fx.fan, fx.d_ray
    D = prime_divisor(fan, d)
    x1_ok = True
    for alpha in (1, 2, 3):
        L = fx.polarization(alpha, 2 * alpha + 1)
        in_d = [w for w in walls(fan) if d in w.rays]
        x1_ok &= exceptional_set(fan, L) == [d]
        x1_ok &= all(invariant_curve_degree(L + D, w) == -1 for w in in_d)
        x1_ok &= all(invariant_curve_degree(-canonical_divisor(fan), w) == 1 for w in in_d)
    table = example_xld_classify("X2", [(1, 6), (1, 6)])
    computed = [p[:2] for p in table.admissible]
    stated = [(a, b) for a in range(1, 7) for b in range(1, 7) if stated_region("X2", (a, b, 2 * a - b + 1))]
    elapsed = time.perf_counter() - t
    ok = x1_ok and computed == stated and elapsed < 5
    record(2, ok, f"X1 alpha=1..3 ok={x1_ok}; X2 computed {computed} vs stated {stated}; {elapsed:.2f}s")


def test_criterion_3_gorenstein_3fold():
    t = time.perf_counter()
    fx = x1()
    cert = gorenstein_3fold_audit(fx.fan, fx.polarization(1, 3))
    leaf = [g.genus for g in cert.genus_table if g.path == (fx.d_ray,)]
    balanced = all(s.balanced for s in cert.surjectivity_log)
    refusal = gorenstein_3fold_audit(p3(), prime_divisor(p3(), 0)).verdict
    elapsed = time.perf_counter() - t
    ok = (cert.verdict.kind == HYPERBOLIC and leaf == [21] and balanced and refusal.kind == NOT_CERTIFIED
          and refusal.reason.startswith("P3 excluded") and elapsed < 10)
    record(3, ok, f"X1 {cert.verdict}, D-leaf genus {leaf}, balanced={balanced}; P3 -> {refusal}; {elapsed:.2f}s")


FUJITA_FIXTURES = ["P2", "P3", "F0", "F1", "F2", "F3", "F4", "F5", "quadric_cone", "X1", "X2"]


def test_criterion_4_fujita_sweep():
    bad = []
    for k, name in enumerate(FUJITA_FIXTURES):
        fan = get_fixture(name)
        n = fan.dim
        for L in sample_divisors(fan, is_ample, 100, seed=400 + k):
            if not fujita_nef_check(fan, L, n + 1):
                bad.append((name, n + 1, L.coefficients))
            if not is_projective_space(fan) and not fujita_nef_check(fan, L, n):
                bad.append((name, n, L.coefficients))
    record(4, not bad, f"{len(FUJITA_FIXTURES)} fixtures x 100 ample L, failures: {bad[:3]}")


SMOOTH_FIXTURES = ["P2", "P3", "P1xP1", "F0", "F1", "F2", "F3", "F4", "F5", "X1", "X2"]


def test_criterion_5_multiplication_sweep():
    t = time.perf_counter()
    bad = []
    for k, name in enumerate(SMOOTH_FIXTURES):
        fan = get_fixture(name)
        Ns = sample_divisors(fan, is_nef, 50, lo=-2, hi=2, seed=500 + k)
        Ls = sample_divisors(fan, is_ample, 50, lo=-2, hi=3, seed=550 + k)
        for N, L in zip(Ns, Ls):
            if multiplication_surjectivity(fan, N, L) != (True, True):
                bad.append((name, N.coefficients, L.coefficients))
    elapsed = time.perf_counter() - t
    record(5, not bad and elapsed < 60, f"{len(SMOOTH_FIXTURES)} fixtures x 50 pairs, failures {bad[:3]}, {elapsed:.1f}s")


def test_criterion_6_oracle_equivalences():
    smooth = ["P2", "P3", "P1xP1", "F1", "F3", "F5", "X1", "X2"]
    nef_bad = 0
    for k in range(500):
        fan = get_fixture(smooth[k % len(smooth)])
        (D,) = sample_divisors(fan, lambda D: True, 1, seed=6000 + k)
        by_walls = min(wall_relation_degrees(fan, D.coefficients).values()) >= 0
        nef_bad += is_nef(D) != by_walls
    h0_bad = 0
    pool = ["P2", "F2", "P1xP1", "P3", "X1", "X2", "quadric_cone", "P112"]
    for k in range(200):
        fan = get_fixture(pool[k % len(pool)])
        (D,) = sample_divisors(fan, lambda D: True, 1, lo=-3, hi=4, seed=7000 + k)
        h0_bad += h0(D) != brute_h0(fan, D.coefficients)
    genus_bad = 0
    surfaces = ["P2", "P1xP1", "F1", "F2", "F3", "F4", "F5"]
    for k in range(100):
        fan = get_fixture(surfaces[k % len(surfaces)])
        (D,) = sample_divisors(fan, is_ample, 1, seed=8000 + k)
        genus_bad += surface_general_member_genus(fan, D).genus != adjunction_genus_oracle(fan, D.coefficients)
    record(6, nef_bad == h0_bad == genus_bad == 0,
           f"mismatches: nef/walls {nef_bad}/500, h0/brute {h0_bad}/200, genus/adjunction {genus_bad}/100")


def test_criterion_7_census_excerpt():
    t = time.perf_counter()
    reports = batch_audit(census_excerpt(), "census")
    ok = len(reports) == 50 and all(r.gorenstein and r.fano for r in reports)
    record("7 (excerpt)", ok, f"{len(reports)} reports, all Gorenstein Fano={ok}, {time.perf_counter() - t:.1f}s")


@pytest.mark.skipif(not os.environ.get("TORICHYP_CENSUS"), reason="set TORICHYP_CENSUS to the full 3d reflexive list")
def test_criterion_7_full_census():
    records = parse_palp_stream(Path(os.environ["TORICHYP_CENSUS"]).read_text())
    jobs = int(os.environ.get("TORICHYP_JOBS", 8))
    reports = batch_audit(records, "census", jobs=jobs)
    flags = all(r.gorenstein and r.fano for r in reports)
    t = time.perf_counter()
    g3 = batch_audit(records, "gorenstein3fold", jobs=jobs)
    elapsed = time.perf_counter() - t
    ok = len(reports) == 4319 and flags and len(g3) == len(records) and elapsed < 300
    record("7 (full)", ok, f"{len(reports)} reports, flags={flags}, gorenstein3fold {elapsed:.0f}s at {jobs} workers")


def test_criterion_8_determinism():
    recs = census_excerpt()
    outputs = {}
    for jobs in (1, 4, 8):
        census = emit_report(batch_audit(recs, "census", jobs=jobs), timing=False)
        g3 = emit_report(batch_audit(recs[:10], "gorenstein3fold", jobs=jobs), timing=False)
        outputs[jobs] = census + g3
    ok = outputs[1] == outputs[4] == outputs[8]
    record(8, ok, f"structured output identical across jobs 1/4/8: {ok}")


def test_criterion_9_p3_induction():
    fan = p3()
    H = prime_divisor(fan, 0)
    cert = hyperbolicity_audit(fan, zero_divisor(fan), H)
    top = [s.triple for s in cert.surjectivity_log if s.path == ()]
    oracle = (brute_h0(fan, (6, 0, 0, 0)), brute_h0(fan, (5, 0, 0, 0)), brute_h0(p2(), (6, 0, 0)))
    ok = cert.verdict.kind == HYPERBOLIC and top == [(84, 56, 28)] * 4 and oracle == (84, 56, 28)
    record(9, ok, f"|6H| {cert.verdict}, triples {top}, oracle {oracle}")
