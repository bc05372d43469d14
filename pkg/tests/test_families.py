import pytest

from cyclicspreads import cond, families as fam
from cyclicspreads.gf import FieldError, make_tower
from cyclicspreads.poly import Poly, g_h_polys, is_irreducible, roots_in_fq2
from cyclicspreads.sweep import cubic_of_row, sweep_cubics


def _admissible(T, alpha):
    v = fam.p_square_value(T, alpha)
    return v != 0 and T.fq.is_square(v)


@pytest.fixture(scope="module")
def c1_rows_7(T7):
    return sweep_cubics(T7).c1_cubics


def test_params_roundtrip(T5, rng):
    for _ in range(50):
        d, g, t = (rng.randrange(25) for _ in range(3))
        assert fam.cubic_params(fam.cubic_from_params(T5, d, g, t)) == (d, g, t)


def test_p_family_formula_q5(T5):
    # P_{0,-1} = x^3 - 3x + 1
    assert fam.make_p_family(T5, 0, 4) == Poly(T5, (1, 2, 0, 1))


@pytest.mark.parametrize("q", [5, 7])
def test_p_family_irreducible_or_split(q):
    # every P_{delta,alpha} is irreducible or has all three roots in F_{q^2}
    T = make_tower(q)
    F = T.fq2
    for alpha in range(1, F.size):
        for delta in range(F.size):
            P = fam.make_p_family(T, delta, alpha)
            assert len(roots_in_fq2(P)) in (0, 3)
            if T.norm(alpha) == 4:
                assert not is_irreducible(P)


def test_p_family_parameters_injective_q5(T5):
    F = T5.fq2
    seen = {}
    for alpha in range(1, F.size):
        for delta in range(F.size):
            P = fam.make_p_family(T5, delta, alpha)
            prev = seen.setdefault(P.coeffs, (delta, alpha))
            if prev != (delta, alpha):
                assert not is_irreducible(P)
                r = F.div(delta, 3)
                assert P == Poly.from_roots(T5, [r, r, r])


@pytest.mark.parametrize("q", [5, 7])
def test_p_family_reducible_clause(q):
    T = make_tower(q)
    F = T.fq2
    hits = 0
    for alpha in range(1, F.size):
        if not _admissible(T, alpha):
            continue
        for delta in range(1, F.size):
            if fam.p_reducible_clause(T, delta, alpha):
                assert not is_irreducible(fam.make_p_family(T, delta, alpha))
                hits += 1
    assert hits > 0


@pytest.mark.parametrize("q", [5, 7])
def test_p_family_count_per_alpha(q):
    T = make_tower(q)
    F = T.fq2
    for alpha in range(1, F.size):
        if not _admissible(T, alpha):
            continue
        n = sum(is_irreducible(fam.make_p_family(T, d, alpha)) for d in range(F.size))
        assert n == 2 * (q * q - 1) // 3


def test_delta_zero_bridge_q5(T5):
    F, q = T5.fq2, T5.q
    third = F.inv(3)
    for alpha in range(1, F.size):
        P = fam.make_p_family(T5, 0, alpha)
        if not is_irreducible(P):
            continue
        a = F.mul(alpha, third)
        b = F.neg(F.mul(F.pow(alpha, q - 1), third))
        assert cond.companion_cubic(T5, a, b) == P
        c1 = fam.p_family_c1(T5, 0, alpha)
        assert c1 == cond.pp2(T5, a, b) == cond.is_permutation_poly(cond.build_f_ab(T5, a, b))
        assert not cond.pp1(T5, a, b)
    # (PP1) only ever describes reducible cubics
    for a in range(F.size):
        for b in range(1, F.size):
            if cond.pp1(T5, a, b):
                assert not is_irreducible(cond.companion_cubic(T5, a, b))


def test_q_family_q5(T5, irreducible_cubics_5):
    n = 0
    for P in irreducible_cubics_5:
        d, g, t = fam.cubic_params(P)
        if T5.norm(g) == 9 % 5 and P == fam.make_q_family(T5, d, g):
            c1 = fam.q_family_c1(T5, g)
            assert c1 == cond.condition1_direct(P)
            n += c1
    assert n == 48
    with pytest.raises(FieldError):
        fam.make_q_family(T5, 0, 1)


def test_binomial_status_matches_irreducibility(T5):
    F = T5.fq2
    for m in (2, 3, 4, 5, 6):
        for theta in range(1, F.size):
            st = fam.binomial_status(T5, theta, m)
            P = fam.make_binomial(T5, theta, m)
            assert st.irreducible == is_irreducible(P)
            if st.irreducible:
                assert st.c1 == cond.condition1_direct(P)


def test_binomial_degree_25_q11(T11):
    F = T11.fq2
    for theta in range(1, F.size, 7):
        st = fam.binomial_status(T11, theta, 25)
        assert st.irreducible == is_irreducible(fam.make_binomial(T11, theta, 25))


def test_binomial_count_q7(c1_rows_7, T7):
    n = sum(1 for c0, c1, c2 in c1_rows_7.tolist() if c1 == 0 and c2 == 0)
    assert n == 32


def test_bilinear_matches_bruteforce_q5(T5, irreducible_cubics_5, rng):
    for P in rng.sample(irreducible_cubics_5, 60) + [Poly(T5, (1, 2, 0, 1))]:
        f = fam.factor_hp_bilinear(P)
        g = fam.factor_hp_bruteforce(P)
        assert (f is None) == (g is None)
        if f is fam.IDENTICALLY_ZERO:
            assert g is fam.IDENTICALLY_ZERO
        elif f is not None:
            H = g_h_polys(P)[1]
            h = {k: H.coeff(*k) for k in f.hp_coeffs(T5)}
            assert f.hp_coeffs(T5) == h == g.hp_coeffs(T5)


def test_condition1_forces_reducible_h_q5(T5, irreducible_cubics_5):
    for P in irreducible_cubics_5:
        if cond.condition1_circle(P):
            assert isinstance(fam.factor_hp_bilinear(P), fam.BilinearFactorization)


def test_condition1_forces_reducible_h_q7(T7, c1_rows_7):
    assert len(c1_rows_7) == 672
    for row in c1_rows_7:
        assert isinstance(fam.factor_hp_bilinear(cubic_of_row(T7, row)), fam.BilinearFactorization)


def test_delta_test_exhaustive_q5(T5, irreducible_cubics_5):
    checked = 0
    for P in irreducible_cubics_5:
        f = fam.factor_hp_bilinear(P)
        if isinstance(f, fam.BilinearFactorization):
            assert fam.cubic_delta_test(T5, f) == cond.condition1_zscan(P)[0]
            checked += 1
    assert checked > 240


def test_classify_roundtrip_q5(T5, irreducible_cubics_5):
    tags = {}
    for P in irreducible_cubics_5:
        tag = fam.classify_cubic(P, check_irreducible=False)
        tags[tag.family] = tags.get(tag.family, 0) + 1
        if tag.family != "U":
            assert fam.tag_poly(T5, tag) == P
        assert fam.family_c1(T5, tag) == cond.condition1_circle(P)
    # every irreducible cubic with reducible H_P lies in one of the three families
    assert tags == {"P": 264, "Q": 84, "B": 12, "U": 4840}


def test_g3rho_are_p_family_members(T5, T11):
    for T in (T5, T11):
        rhos = fam.g3_rhos(T)
        assert len(rhos) > 0
        for r in rhos:
            g = fam.make_g3rho(T, r)
            assert cond.condition1_direct(g)
            assert fam.classify_cubic(g).family == "P"
    with pytest.raises(FieldError):
        fam.make_g3rho(make_tower(7), 1)
