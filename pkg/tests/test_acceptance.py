"""Acceptance criteria 1-10. A PASS/FAIL line per criterion is printed in the
terminal summary (see conftest.py)."""

import os
import random
import time

import pytest

from cyclicspreads import cond, equiv as eq, families as fam, spread as sp
from cyclicspreads.gf import make_tower
from cyclicspreads.poly import Poly, g_h_polys, is_irreducible
from cyclicspreads.sweep import expected_counts, family_tally, sweep_cubics

THREADS = os.cpu_count() or 1


def crit(n):
    return pytest.mark.criterion(n)


# -- 1. total counts -----------------------------------------------------------------

@crit(1)
@pytest.mark.parametrize("q,total,limit", [(5, 240, 10), (7, 672, 60), (11, 5280, 300), (13, 8736, 600)])
def test_c1_total_counts(q, total, limit):
    t0 = time.perf_counter()
    res = sweep_cubics(make_tower(q), threads=THREADS)
    dt = time.perf_counter() - t0
    assert res.total == total == expected_counts(q)["total"]
    assert dt <= limit, f"q={q} took {dt:.1f}s"


# -- 2. class counts -----------------------------------------------------------------

@crit(2)
@pytest.mark.parametrize("q,n", [(5, 2), (7, 2), (11, 4), (13, 4)])
def test_c2_class_counts(q, n):
    assert len(eq.enumerate_classes(make_tower(q))) == n


@crit(2)
def test_c2_orbit_partition_q5(T5):
    c1 = {tuple(r) + (1,) for r in sweep_cubics(T5).c1_cubics.tolist()}
    assert len(c1) == 240
    orbits = []
    remaining = set(c1)
    while remaining:
        P = Poly(T5, min(remaining))
        orb = eq.orbit_expand(P)
        assert orb <= c1
        orbits.append(orb)
        remaining -= orb
    assert len(orbits) == 2 and sum(map(len, orbits)) == 240 == 5 * 6 * 24 // 3


# -- 3. family counts ----------------------------------------------------------------

@crit(3)
def test_c3_family_counts(T5, T7):
    t5 = family_tally(T5, sweep_cubics(T5).c1_cubics)
    assert (t5.Q, t5.B, t5.P_delta_1) == (48, 0, 16)
    t7 = family_tally(T7, sweep_cubics(T7).c1_cubics)
    assert t7.B == 32


# -- 4. checker equivalence ----------------------------------------------------------

def _all_checkers(P):
    T = P.tower
    d = cond.condition1_direct(P)
    z = cond.condition1_zscan(P)[0]
    tag = fam.classify_cubic(P, check_irreducible=False)
    f = fam.factor_hp_bilinear(P)
    dt = fam.cubic_delta_test(T, f) if isinstance(f, fam.BilinearFactorization) else False
    return d, z, fam.family_c1(T, tag), dt


@crit(4)
def test_c4_checkers_exhaustive_q5(irreducible_cubics_5):
    bad = [P for P in irreducible_cubics_5 if len(set(_all_checkers(P))) != 1]
    assert len(irreducible_cubics_5) == 5200 and not bad


@crit(4)
def test_c4_checkers_random_q7(irreducible_cubics_7):
    sample = random.Random(4).sample(irreducible_cubics_7, 10_000)
    bad = [P for P in sample if len(set(_all_checkers(P))) != 1]
    assert not bad


# -- 5. spreads ----------------------------------------------------------------------

@crit(5)
def test_c5_class_representatives_q5(T5):
    for c in eq.enumerate_classes(T5):
        t0 = time.perf_counter()
        cert = sp.verify_spread(sp.spread_from_poly(c.representative(T5)))
        assert time.perf_counter() - t0 <= 30
        assert cert.valid and cert.n_lines == 651 and cert.marks == 15624


@crit(5)
def test_c5_failing_cubic_q5(T5):
    P = next(fam.make_binomial(T5, th, 3) for th in range(1, 25)
             if fam.binomial_status(T5, th, 3).irreducible and not fam.binomial_status(T5, th, 3).c1)
    assert not cond.condition1_direct(P)
    S = sp.spread_from_poly(P)
    cert = sp.verify_spread(S)
    assert not cert.valid and cert.cover_count >= 2
    assert sum(cert.doubly_covered in set(row) for row in S.points.tolist()) == cert.cover_count


# -- 6. F_1 pipeline -----------------------------------------------------------------

@crit(6)
@pytest.mark.parametrize("q,stab", [(5, 16), (7, 48)])
def test_c6_f1_pipeline(q, stab):
    T = make_tower(q)
    assert len(eq.f1_roots(T)) == 2
    factors = eq.f1_cubic_factors(T)
    assert len(factors) == (q * q - 1) // 3
    assert all(P == fam.make_p_family(T, d, 1) and is_irreducible(P) for d, P in factors)
    assert eq.check_f1_product(T, factors)
    S = eq.stabilizer_f1(T)
    assert len(S) == stab
    fac = {P.coeffs for _, P in factors}
    for e in S:
        assert {eq.mobius_monic(T, e.u, e.v, 0, Poly(T, c)).coeffs for c in fac} == fac


# -- 7. permutation-polynomial bridges -----------------------------------------------

@crit(7)
def test_c7_f_ab_bridge_q5(T5):
    F = T5.fq2
    for a in range(F.size):
        for b in range(1, F.size):
            P = cond.companion_cubic(T5, a, b)
            assert cond.is_permutation_poly(cond.build_f_ab(T5, a, b)) == \
                cond.condition1_direct(P, allow_reducible=True)
            assert cond.f_ab_bipoly(T5, a, b) == g_h_polys(P)[1].scale(F.neg(T5.norm(b)))


@crit(7)
def test_c7_fl_bridge_q5(T5):
    Q = 25
    for i in range(Q ** 3):
        P = Poly(T5, (i % Q, (i // Q) % Q, i // (Q * Q), 1))
        assert cond.is_permutation_poly(cond.fl_poly(P)) == cond.condition1_direct(P, allow_reducible=True)


@crit(7)
def test_c7_thresholds():
    assert cond.aubry_perret_threshold(4, 2) == 47
    assert cond.aubry_perret_threshold(3, 3) == 13


# -- 8. degree-25 binomial -----------------------------------------------------------

@crit(8)
def test_c8_binomial_degree_25(T11):
    t0 = time.perf_counter()
    F = T11.fq2
    theta = next(x for x in range(1, F.size) if F.element_order(x) == F.order)
    st = fam.binomial_status(T11, theta, 25)
    assert st.irreducible and st.c1
    P = fam.make_binomial(T11, theta, 25)
    assert is_irreducible(P)  # independent check of the three clauses
    ok, wit = cond.condition1_zscan(P, allow_reducible=True)
    assert ok and wit is None
    assert time.perf_counter() - t0 <= 5


# -- 9. Feng-Lu cubics do not reach every class --------------------------------------

@crit(9)
def test_c9_feng_lu(T5, T11):
    r5 = eq.feng_lu_coverage(T5)
    assert r5.n_classes == 2 and len(r5.g_classes) == 1
    r11 = eq.feng_lu_coverage(T11)
    assert r11.n_classes == 4 and len(r11.g_classes) <= 3 and r11.new_classes


# -- 10. property suites ---------------------------------------------------------------

NAMED = {
    "test_poly.py": ["test_p_divides_g_at_frobenius_point"],
    "test_families.py": ["test_p_family_irreducible_or_split", "test_p_family_parameters_injective_q5",
                         "test_p_family_reducible_clause"],
    "test_equiv.py": ["test_projective_equivalence_is_equivalence", "test_conjugation_identity"],
}


@crit(10)
def test_c10_named_property_tests_exist():
    here = os.path.dirname(__file__)
    for fname, names in NAMED.items():
        src = open(os.path.join(here, fname)).read()
        for n in names:
            assert f"def {n}(" in src, n
