"""The three families of cubics satisfying the spread condition, and the machinery that
recognises them: bilinear factorization of H_P and the discriminant test.

Cubics are written P = x^3 - delta x^2 - gamma x - theta.

    B_theta       = x^3 - theta
    P_{delta,a}   = x^3 - delta x^2 - (delta a + 3 a^{1-q}) x
                        - (delta a^2 (1 - a^{-(q+1)})/3 + a^{2-q})
    Q_{delta,g}   = x^3 - delta x^2 - g x + delta g/9,     g^{q+1} = 9
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gf import FieldError, FieldTower, radical
from .poly import Poly, g_h_polys, is_irreducible


@dataclass(frozen=True)
class Binomial:
    theta: int
    family = "B"


@dataclass(frozen=True)
class PFamily:
    delta: int
    alpha: int
    family = "P"


@dataclass(frozen=True)
class QFamily:
    delta: int
    gamma: int
    family = "Q"


@dataclass(frozen=True)
class Unclassified:
    reason: str  # "hp_zero" or "hp_irreducible"
    family = "U"


FamilyTag = Binomial | PFamily | QFamily | Unclassified


def cubic_params(P: Poly) -> tuple[int, int, int]:
    """(delta, gamma, theta) of a monic cubic."""
    if P.degree != 3 or not P.is_monic():
        raise FieldError("expected a monic cubic")
    F = P.F
    return F.neg(P.coeff(2)), F.neg(P.coeff(1)), F.neg(P.coeff(0))


def cubic_from_params(T: FieldTower, delta: int, gamma: int, theta: int) -> Poly:
    F = T.fq2
    return Poly(T, (F.neg(theta), F.neg(gamma), F.neg(delta), 1))


# -- binomials ---------------------------------------------------------------------


def make_binomial(T: FieldTower, theta: int, m: int) -> Poly:
    if theta == 0:
        raise FieldError("binomial needs theta != 0")
    if m < 2:
        raise FieldError("binomial needs m >= 2")
    return Poly(T, (T.fq2.neg(theta),) + (0,) * (m - 1) + (1,))


@dataclass(frozen=True)
class BinomialStatus:
    irreducible: bool
    c1: bool


def binomial_status(T: FieldTower, theta: int, m: int) -> BinomialStatus:
    """x^m - theta over F_{q^2}.

    Irreducible iff rad(m) | o(theta), gcd(m, (Q-1)/o(theta)) = 1 and
    (4 | m  =>  Q = 1 mod 4), Q = q^2.  Spread condition iff gcd(m, q+1) = 1
    and theta^{q+1} != 1.
    """
    if theta == 0:
        raise FieldError("binomial needs theta != 0")
    F = T.fq2
    Q = F.size
    o = F.element_order(theta)
    irr = (o % radical(m) == 0
           and math.gcd(m, (Q - 1) // o) == 1
           and (m % 4 != 0 or Q % 4 == 1))
    c1 = math.gcd(m, T.q + 1) == 1 and T.norm(theta) != 1
    return BinomialStatus(irr, c1)


# -- P family ----------------------------------------------------------------------


def make_p_family(T: FieldTower, delta: int, alpha: int) -> Poly:
    if alpha == 0:
        raise FieldError("P_{delta,alpha} needs alpha != 0")
    F, q = T.fq2, T.q
    third = F.inv(3)
    a1q = F.pow(alpha, 1 - q)
    gamma = F.add(F.mul(delta, alpha), F.mul(3, a1q))
    nrm_inv = F.inv(T.norm(alpha))
    theta = F.add(F.mul(F.mul(F.mul(delta, F.mul(alpha, alpha)), F.sub(1, nrm_inv)), third),
                  F.pow(alpha, 2 - q))
    return cubic_from_params(T, delta, gamma, theta)


def p_square_value(T: FieldTower, alpha: int) -> int:
    """(4 - alpha^{q+1}) / (3 alpha^{q+1}), an element of F_q."""
    F = T.fq2
    n = T.norm(alpha)
    v = F.div(F.sub(4, n), F.mul(3, n))
    assert v < T.q
    return v


def p_family_c1(T: FieldTower, delta: int, alpha: int) -> bool:
    if alpha == 0:
        raise FieldError("P_{delta,alpha} needs alpha != 0")
    F = T.fq2
    v = p_square_value(T, alpha)
    if v == 0 or not T.fq.is_square(v):
        return False
    if delta == 0:
        return True
    return T.norm(F.add(alpha, F.mul(3, F.inv(T.frob(delta))))) != 1


def p_reducible_clause(T: FieldTower, delta: int, alpha: int) -> bool:
    """delta != 0 and (alpha + 3 delta^{-q})^{q+1} = 1."""
    if delta == 0:
        return False
    F = T.fq2
    return T.norm(F.add(alpha, F.mul(3, F.inv(T.frob(delta))))) == 1


# -- Q family ----------------------------------------------------------------------


def make_q_family(T: FieldTower, delta: int, gamma: int) -> Poly:
    F = T.fq2
    if T.norm(gamma) != 9 % T.p:
        raise FieldError("Q_{delta,gamma} needs gamma^{q+1} = 9")
    theta = F.neg(F.div(F.mul(delta, gamma), 9 % T.p))
    return cubic_from_params(T, delta, gamma, theta)


def q_family_c1(T: FieldTower, gamma: int) -> bool:
    if T.norm(gamma) != 9 % T.p:
        raise FieldError("Q_{delta,gamma} needs gamma^{q+1} = 9")
    return T.fq2.pow(gamma, (T.q + 1) // 2) == 3 % T.p


# -- Feng-Lu cubics ----------------------------------------------------------------


def make_g3rho(T: FieldTower, rho: int) -> Poly:
    """x^3 - 3x + (rho + rho^q) for rho of order q+1, q = 2 mod 3."""
    F, q = T.fq2, T.q
    if q % 3 != 2:
        raise FieldError("g_{3,rho} is a cubic family only for q = 2 mod 3")
    if rho == 0 or F.element_order(rho) != q + 1:
        raise FieldError("rho must have order q+1")
    return Poly(T, (F.add(rho, T.frob(rho)), F.neg(3), 0, 1))


def g3_rhos(T: FieldTower) -> list[int]:
    F = T.fq2
    return [r for r in T.unit_circle if F.element_order(r) == T.q + 1]


# -- bilinear factorization of H_P -------------------------------------------------


@dataclass(frozen=True)
class BilinearFactorization:
    """H_P = mu (c zw + a z + b w + d)(c zw + b z + a w + d)."""

    mu: int
    a: int
    b: int
    c: int
    d: int

    def hp_coeffs(self, T: FieldTower) -> dict[tuple[int, int], int]:
        F = T.fq2
        mu, a, b, c, d = self.mu, self.a, self.b, self.c, self.d
        s = F.add(a, b)
        return {
            (2, 2): F.mul(mu, F.mul(c, c)),
            (2, 1): F.mul(mu, F.mul(c, s)),
            (2, 0): F.mul(mu, F.mul(a, b)),
            (1, 1): F.mul(mu, F.add(F.mul(2, F.mul(c, d)), F.add(F.mul(a, a), F.mul(b, b)))),
            (1, 0): F.mul(mu, F.mul(d, s)),
            (0, 0): F.mul(mu, F.mul(d, d)),
        }


class _HPZero:
    def __repr__(self):
        return "IDENTICALLY_ZERO"

    def __bool__(self):
        return False


IDENTICALLY_ZERO = _HPZero()


def _symmetric_coeffs(H) -> dict[tuple[int, int], int] | None:
    """The six independent coefficients, or None if H is not of the expected shape."""
    h = {}
    for i in range(3):
        for j in range(3):
            if H.coeff(i, j) != H.coeff(j, i):
                return None
    for i in range(len(H.coeffs)):
        for j in range(len(H.coeffs[i])):
            if (i > 2 or j > 2) and H.coeff(i, j):
                return None
    for k in [(2, 2), (2, 1), (2, 0), (1, 1), (1, 0), (0, 0)]:
        h[k] = H.coeff(*k)
    return h


def _solve_ab(F, s: int, pr: int):
    """Distinct roots of X^2 - s X + pr in F_{q^2}, ordered, or None."""
    disc = F.sub(F.mul(s, s), F.mul(4, pr))
    if disc == 0:
        return None
    r = F.sqrt(disc)
    if r is None:
        return None
    half = F.inv(2)
    a = F.mul(F.add(s, r), half)
    b = F.mul(F.sub(s, r), half)
    return (a, b) if a < b else (b, a)


def factor_bipoly_bilinear(T: FieldTower, H):
    """Closed-form solve of the coefficient system for a symmetric H of bidegree (2,2)."""
    F = T.fq2
    if H.is_zero():
        return IDENTICALLY_ZERO
    h = _symmetric_coeffs(H)
    if h is None:
        return None
    cands = []
    if h[2, 2]:
        # c = 1
        mu = h[2, 2]
        s = F.div(h[2, 1], mu)
        pr = F.div(h[2, 0], mu)
        d = F.mul(F.add(F.sub(F.div(h[1, 1], mu), F.mul(s, s)), F.mul(2, pr)), F.inv(2))
        ab = _solve_ab(F, s, pr)
        if ab:
            cands.append(BilinearFactorization(mu, ab[0], ab[1], 1, d))
    elif h[0, 0]:
        # c = 0, d = 1
        mu = h[0, 0]
        s = F.div(h[1, 0], mu)
        pr = F.mul(F.sub(F.mul(s, s), F.div(h[1, 1], mu)), F.inv(2))
        ab = _solve_ab(F, s, pr)
        if ab:
            cands.append(BilinearFactorization(mu, ab[0], ab[1], 0, 1))
    else:
        # c = d = 0: H = mu (a z + b w)(b z + a w); normalise one of a, b to 1
        if h[2, 0] == 0:
            if h[1, 1]:
                cands.append(BilinearFactorization(h[1, 1], 0, 1, 0, 0))
        else:
            # a = 1: h20 b^2 - h11 b + h20 = 0, roots b and 1/b give the same factors
            roots = _solve_ab(F, F.div(h[1, 1], h[2, 0]), 1)
            if roots:
                b = roots[0]
                mu = F.div(h[2, 0], b)
                # the product is symmetric in (a, b), so order them canonically
                cands.append(BilinearFactorization(mu, min(1, b), max(1, b), 0, 0))
    for f in cands:
        if f.hp_coeffs(T) == h:
            return f
    return None


def factor_hp_bilinear(P: Poly):
    """Bilinear factorization of H_P over F_{q^2}.

    Returns a BilinearFactorization, ``IDENTICALLY_ZERO`` when H_P = 0, or
    None when no factorization of that shape exists.
    """
    if P.degree != 3:
        raise FieldError("factor_hp_bilinear expects a cubic")
    H = g_h_polys(P)[1]
    return factor_bipoly_bilinear(P.tower, H)


def factor_hp_bruteforce(P: Poly):
    """Exhaustive normalised search; reference oracle for small q."""
    T = P.tower
    F = T.fq2
    H = g_h_polys(P)[1]
    if H.is_zero():
        return IDENTICALLY_ZERO
    h = _symmetric_coeffs(H)
    if h is None:
        return None
    Q = F.size
    found = []
    for c, d_range in ((1, range(Q)), (0, (1,)), (0, (0,))):
        for d in d_range:
            for a in range(Q):
                for b in range(a + 1, Q):
                    if c == 0 and d == 0 and 1 not in (a, b):
                        continue
                    f0 = BilinearFactorization(1, a, b, c, d).hp_coeffs(T)
                    k = next((key for key in f0 if f0[key]), None)
                    if k is None or not h[k]:
                        continue
                    mu = F.div(h[k], f0[k])
                    if all(F.mul(mu, f0[key]) == h[key] for key in h):
                        found.append(BilinearFactorization(mu, a, b, c, d))
        if found:
            break
    return found[0] if found else None


def cubic_delta_test(T: FieldTower, f: BilinearFactorization) -> bool:
    """Spread condition from a bilinear factor c zw + a z + b w + d."""
    F = T.fq2
    a, b, c, d = f.a, f.b, f.c, f.d
    if F.mul(a, b) == F.mul(c, d):
        raise FieldError("ab = cd: the cubic is reducible")
    fr, nrm = T.frob, T.norm
    e = F.sub(F.mul(b, fr(d)), F.mul(fr(a), c))
    lam = F.sub(F.add(nrm(d), nrm(b)), F.add(nrm(c), nrm(a)))
    e2 = F.sub(F.mul(fr(b), d), F.mul(a, fr(c)))
    assert e2 == fr(e)
    Delta = F.sub(F.mul(lam, lam), F.mul(4, nrm(e)))
    assert Delta < T.q, "Delta must lie in F_q"
    Fq = T.fq
    if Delta != 0 and Fq.is_square(Delta):
        return True
    s = F.add(a, b)
    if Delta != 0:
        # proportional: (e, lam, e2) and (c, s, d), both nonzero
        u, v = (e, lam, e2), (c, s, d)
        if not any(u) or not any(v):
            return False
        return all(F.mul(u[i], v[j]) == F.mul(u[j], v[i]) for i in range(3) for j in range(i + 1, 3))
    if e == 0:
        return False
    r = F.neg(F.div(lam, F.mul(2, e)))
    return F.add(F.add(F.mul(c, F.mul(r, r)), F.mul(s, r)), d) == 0


# -- classification ----------------------------------------------------------------


def classify_cubic(P: Poly, check_irreducible: bool = True) -> FamilyTag:
    T = P.tower
    F = T.fq2
    if check_irreducible and not is_irreducible(P):
        raise FieldError("classify_cubic expects an irreducible cubic")
    delta, gamma, theta = cubic_params(P)
    f = factor_hp_bilinear(P)
    if f is IDENTICALLY_ZERO:
        return Unclassified("hp_zero")
    if f is None:
        return Unclassified("hp_irreducible")
    if f.c == 0:
        assert delta == 0 and gamma == 0
        return Binomial(theta)
    s = F.add(f.a, f.b)
    if s == 0:
        tag = QFamily(delta, gamma)
        assert make_q_family(T, delta, gamma) == P
        return tag
    if make_p_family(T, delta, s) == P:
        return PFamily(delta, s)
    hits = [al for al in range(1, F.size) if make_p_family(T, delta, al) == P]
    assert len(hits) <= 1, "P_{delta,alpha} parameters not unique"
    if hits:
        return PFamily(delta, hits[0])
    raise AssertionError(f"reducible H_P but no family matched for {P}")


def family_c1(T: FieldTower, tag: FamilyTag) -> bool:
    """Spread condition read off the family criterion."""
    if isinstance(tag, Binomial):
        return T.norm(tag.theta) != 1 and T.q % 3 == 1
    if isinstance(tag, PFamily):
        return p_family_c1(T, tag.delta, tag.alpha)
    if isinstance(tag, QFamily):
        return q_family_c1(T, tag.gamma)
    return False


def tag_poly(T: FieldTower, tag: FamilyTag) -> Poly:
    if isinstance(tag, Binomial):
        return make_binomial(T, tag.theta, 3)
    if isinstance(tag, PFamily):
        return make_p_family(T, tag.delta, tag.alpha)
    if isinstance(tag, QFamily):
        return make_q_family(T, tag.delta, tag.gamma)
    raise FieldError("unclassified tag has no polynomial")
