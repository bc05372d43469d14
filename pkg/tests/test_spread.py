import csv
import random

import numpy as np
import pytest

from cyclicspreads import cond, equiv as eq, families as fam, spread as sp
from cyclicspreads.gf import FieldError, make_tower
from cyclicspreads.poly import Poly


@pytest.fixture(scope="module")
def S5(T5):
    return sp.spread_from_poly(Poly(T5, (1, 2, 0, 1)))


def _bad_cubic(T):
    # irreducible binomial failing the spread condition
    for theta in range(1, T.fq2.size):
        st = fam.binomial_status(T, theta, 3)
        if st.irreducible and not st.c1:
            return fam.make_binomial(T, theta, 3)


def test_coordinates_roundtrip(T5, rng):
    for _ in range(100):
        x = rng.randrange(5 ** 6)
        assert sp.from_coords(T5, sp.coords(T5, x)) == x


def test_rref_key(T5):
    a, b = [1, 2, 0, 0, 0, 3], [0, 1, 4, 0, 0, 0]
    k = sp.rref_key(T5, [a, b])
    assert k == sp.rref_key(T5, [[(x + y) % 5 for x, y in zip(a, b)], b])
    assert len(sp.rref_key(T5, [a, [2 * c % 5 for c in a]])) == 1


def test_line_has_dimension_two(T5, rng):
    F6 = T5.ensure_fq6_tables()
    n = 0
    while n < 100:
        eps = rng.randrange(F6.size)
        if F6.pow(eps, 25 * 25) == eps:   # eps in F_{q^2}
            continue
        ln = sp.build_line(T5, eps)
        assert len(ln.key) == 2
        assert np.unique(ln.points(T5)).size == 25
        n += 1
    with pytest.raises(FieldError):
        sp.build_line(T5, T5.unit_circle[1])


def test_valid_spread_q5(S5):
    cert = sp.verify_spread(S5)
    assert cert.valid and cert.n_lines == 651 and cert.marks == 5 ** 6 - 1
    assert S5.group_order == sp.c_order(S5.tower) == 2604
    assert S5.points.shape == (651, 24)


def test_c_transitive(S5, T5):
    # the orbit of any line of the spread is the whole spread
    line = S5.lines[100]
    S2 = sp.orbit_under_C(T5, line)
    assert {ln.key for ln in S2.lines} == {ln.key for ln in S5.lines}


def test_invalid_spread_has_doubly_covered_witness(T5):
    P = _bad_cubic(T5)
    assert not cond.condition1_direct(P)
    S = sp.spread_from_poly(P)
    cert = sp.verify_spread(S)
    assert not cert.valid
    x = cert.doubly_covered
    assert x is not None and cert.cover_count >= 2
    assert len(cert.lines_through) == cert.cover_count
    for i in cert.lines_through:
        assert x in set(S.points[i].tolist())
    # least such vector
    counts = np.bincount(S.points.ravel(), minlength=5 ** 6)
    assert int(np.nonzero(counts[1:] > 1)[0][0]) + 1 == x


@pytest.mark.parametrize("q,n", [(5, 651), (7, 2451)])
def test_desarguesian(q, n):
    T = make_tower(q)
    cert = sp.verify_spread(sp.desarguesian(T))
    assert cert.valid and cert.n_lines == n


def test_validity_is_a_class_property_q5(T5):
    # every member of each class, every root choice
    for c in eq.enumerate_classes(T5):
        for coeffs in sorted(eq.orbit_expand(c.representative(T5))):
            P = Poly(T5, coeffs)
            for k in range(3):
                assert sp.verify_spread(sp.spread_from_poly(P, k)).valid


def test_equivalent_cubics_give_equivalent_spreads(T5, rng):
    F6 = T5.ensure_fq6_tables()
    P = Poly(T5, (1, 2, 0, 1))
    for _ in range(5):
        while True:
            u, v = rng.randrange(25), rng.randrange(25)
            if T5.norm(u) != T5.norm(v):
                break
        Q = eq.mobius_monic(T5, u, v, 0, P)
        zeta = sp.roots_in_fq6(T5, Q)[0]
        c = F6.add(u, F6.mul(T5.frob(v), zeta))
        eps = F6.div(F6.add(v, F6.mul(T5.frob(u), zeta)), c)
        assert eps in sp.roots_in_fq6(T5, P)
        A = np.sort(F6.vmul(sp.build_line(T5, eps).points(T5), np.full(25, c)))
        B = np.sort(sp.build_line(T5, zeta).points(T5))
        assert np.array_equal(A, B)
        SP = sp.orbit_under_C(T5, sp.build_line(T5, eps))
        SQ = sp.orbit_under_C(T5, sp.build_line(T5, zeta))
        scaled = np.sort(F6.vmul(SP.points, np.full(SP.points.shape, c)), axis=1)
        assert {tuple(r) for r in scaled.tolist()} == {tuple(r) for r in SQ.points.tolist()}


def test_export_lines(S5, T5, tmp_path):
    path = tmp_path / "lines.csv"
    assert sp.export_lines(S5, path) == 651
    rows = list(csv.reader(open(path)))
    assert len(rows) == 651 and all(len(r) == 12 for r in rows)
    keys = {tuple(map(int, r)) for r in rows}
    assert len(keys) == 651
    r = [int(x) for x in rows[0]]
    assert sp.rref_key(T5, [r[:6], r[6:]]) == (tuple(r[:6]), tuple(r[6:]))


def test_linear_space_axioms(S5):
    I = sp.build_linear_space(S5)
    assert I.n_points == 5 ** 6 and I.points_per_line == 25
    assert I.n_lines == 651 * 625
    rep = sp.check_axioms(I, random.Random(7), n_pairs=3000, n_line_pairs=1000, n_trans=50)
    assert rep.axiom_i and rep.axiom_ii and rep.translations_ok
    assert rep.cosets_per_subspace == 625


def test_linear_space_rejects_non_spread(T5):
    with pytest.raises(FieldError):
        sp.build_linear_space(sp.spread_from_poly(_bad_cubic(T5)))
