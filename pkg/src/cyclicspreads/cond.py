"""Spread-condition checkers, permutation-polynomial bridges, curve-bound threshold.

The spread condition for P of degree m (d = m):
    (x^m P(x^{q-1}) / y^m P(y^{q-1})) in F_q  =>  x/y in F_q
for all nonzero x, y in F_{q^2}.  Equivalently G_P has no zero on pairs of
distinct unit-circle points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf import FieldError, FieldTower, prime_power
from .poly import BiPoly, Poly, _padd, _trim, g_h_polys, is_irreducible, tilde


class ReducibleInput(FieldError):
    pass


@dataclass(frozen=True)
class ZWitness:
    z: int
    w: int


def _require_irreducible(P: Poly, allow_reducible: bool):
    if P.degree < 1:
        raise FieldError("the spread condition needs deg P >= 1")
    if not allow_reducible and not is_irreducible(P):
        raise ReducibleInput("spread-condition checker requires an irreducible polynomial")


def condition1_direct(P: Poly, allow_reducible: bool = False) -> bool:
    """Definitional check, grouping x by the class of A(x) = x^m P(x^{q-1}) mod F_q^*.

    The implication holds iff the map  A(x)^{q-1} -> x^{q-1}  is well defined.
    If A vanishes somewhere on F_{q^2}^* the quotient is undefined and the
    condition is taken to fail (only possible for reducible P).
    """
    _require_irreducible(P, allow_reducible)
    T = P.tower
    F = T.fq2
    q, m = T.q, P.degree
    if P.degree >= 2 and not allow_reducible:
        assert all(P(z) for z in T.unit_circle), "irreducible P with a unit-circle root"
    seen: dict[int, int] = {}
    for x in range(1, F.size):
        cls = F.pow(x, q - 1)
        A = F.mul(F.pow(x, m), P(cls))
        if A == 0:
            return False
        key = F.pow(A, q - 1)
        prev = seen.setdefault(key, cls)
        if prev != cls:
            return False
    return True


def condition1_pairs(P: Poly) -> bool:
    """Literal double loop over (x, y); slow reference oracle."""
    T = P.tower
    F = T.fq2
    q, m = T.q, P.degree
    A = {}
    for x in range(1, F.size):
        A[x] = F.mul(F.pow(x, m), P(F.pow(x, q - 1)))
    for x in range(1, F.size):
        for y in range(1, F.size):
            if A[y] == 0 or A[x] == 0:
                return False
            r = F.div(A[x], A[y])
            if r < q and F.div(x, y) >= q:
                return False
    return True


def condition1_zscan(P: Poly, allow_reducible: bool = False, check_h: bool = True):
    """Scan Z for zeros of G_P (and H_P). Returns (holds, witness or None)."""
    _require_irreducible(P, allow_reducible)
    T = P.tower
    F = T.fq2
    circ = T.unit_circle
    Pt = tilde(P)
    pv = [P(z) for z in circ]
    tv = [Pt(z) for z in circ]
    H = g_h_polys(P)[1] if check_h else None
    wit = None
    n = len(circ)
    for i in range(n):
        for j in range(i + 1, n):
            g0 = F.sub(F.mul(pv[i], tv[j]), F.mul(tv[i], pv[j]))
            if H is not None:
                h0 = H(circ[i], circ[j])
                assert (g0 == 0) == (h0 == 0), "G_P and H_P disagree on Z"
            if g0 == 0:
                wit = ZWitness(circ[i], circ[j])
                break
        if wit:
            break
    return wit is None, wit


def condition1_circle(P: Poly) -> bool:
    """Fast form: on the circle ~P(z) = z^m P(z)^q, so C1 iff P has no circle
    root and z -> z^m P(z)^{q-1} is injective on the circle."""
    T = P.tower
    F = T.fq2
    q, m = T.q, P.degree
    keys = set()
    for z in T.unit_circle:
        v = P(z)
        if v == 0:
            return False
        k = F.mul(F.pow(z, m), F.pow(v, q - 1))
        if k in keys:
            return False
        keys.add(k)
    return True


# -- permutation polynomials --------------------------------------------------------


def eval_all(f: Poly) -> np.ndarray:
    """f(x) for every x in F_{q^2} (index = code)."""
    F = f.F
    xs = np.arange(F.size, dtype=np.int64)
    acc = np.zeros(F.size, dtype=np.int64)
    for e, c in enumerate(f.coeffs):
        if c:
            acc = F.vadd(acc, F.vmul(np.full(F.size, c), F.vpow(xs, e)))
    return acc


def is_permutation_poly(f: Poly) -> bool:
    vals = eval_all(f)
    return np.unique(vals).size == f.F.size


def fl_poly(P: Poly) -> Poly:
    """x^m P(x^{q-1}) for m = deg P."""
    q, m = P.tower.q, P.degree
    c = [0] * (m + (q - 1) * m + 1)
    for i, a in enumerate(P.coeffs):
        c[m + (q - 1) * i] = a
    return Poly(P.tower, tuple(c))


def build_f_ab(tower: FieldTower, a: int, b: int) -> Poly:
    """f_{a,b}(X) = X + a X^{1+q(q-1)} + b X^{1+2(q-1)}."""
    if b == 0:
        raise FieldError("f_{a,b} needs b != 0")
    q = tower.q
    c = [0] * (2 + q * (q - 1))
    c[1] = 1
    c[1 + q * (q - 1)] = tower.fq2.add(c[1 + q * (q - 1)], a)
    c[1 + 2 * (q - 1)] = tower.fq2.add(c[1 + 2 * (q - 1)], b)
    return Poly(tower, tuple(c))


def companion_cubic(tower: FieldTower, a: int, b: int) -> Poly:
    """x^3 + b^{-1} x + a b^{-1}."""
    F = tower.fq2
    bi = F.inv(b)
    return Poly(tower, (F.mul(a, bi), bi, 0, 1))


def f_ab_bipoly(tower: FieldTower, a: int, b: int) -> BiPoly:
    """((a^q X^3 + X^2 + b^q)(b Y^3 + Y + a) - (X <-> Y)) / (X - Y)."""
    F = tower.fq2
    aq, bq = tower.frob(a), tower.frob(b)
    u = [bq, 0, 1, aq]
    v = [a, 1, 0, b]
    N = [[F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i])) for j in range(4)] for i in range(4)]
    Hrows: list[list[int]] = [[] for _ in range(3)]
    carry: list[int] = []
    for k in range(3, 0, -1):
        carry = _padd(F, _trim(list(N[k])), [0] + carry if carry else [])
        Hrows[k - 1] = carry
    assert not _padd(F, _trim(list(N[0])), [0] + carry if carry else [])
    return BiPoly(tower, tuple(tuple(r + [0] * (3 - len(r))) for r in Hrows))


def pp1(tower: FieldTower, a: int, b: int) -> bool:
    """a^q b^q = a(b^{q+1} - a^{q+1}) and 1 - 4(b/a)^{q+1} a square of F_q^*."""
    F = tower.fq2
    if a == 0 or b == 0:
        return False
    lhs = F.mul(tower.frob(a), tower.frob(b))
    rhs = F.mul(a, F.sub(tower.norm(b), tower.norm(a)))
    if lhs != rhs:
        return False
    v = F.sub(1, F.mul(4, tower.norm(F.div(b, a))))
    return v != 0 and tower.fq.is_square(v)


def pp2(tower: FieldTower, a: int, b: int) -> bool:
    """a^{q-1} + 3b = 0 and -3(1 - 4(b/a)^{q+1}) a square of F_q^*."""
    F, q, p = tower.fq2, tower.q, tower.p
    if a == 0 or b == 0:
        return False
    if F.add(F.pow(a, q - 1), F.mul(3, b)) != 0:
        return False
    v = F.mul(F.neg(3 % p), F.sub(1, F.mul(4, tower.norm(F.div(b, a)))))
    return v != 0 and tower.fq.is_square(v)


# -- curve-bound threshold -----------------------------------------------------------


def aubry_perret_threshold(partial_degree: int, ideal_points: int) -> int:
    """Least prime power q with p > 3 and q + 1 - A sqrt(q) - deg - D > 0.

    A = (deg-1)(deg-2). Exact integer comparison: with B = A^2 - 4(1-deg-D)
    the condition is 4q - A^2 - B > 2 A sqrt(B).
    """
    dd, D = partial_degree, ideal_points
    if dd < 1 or D < 0:
        raise ValueError("need partial_degree >= 1 and ideal_points >= 0")
    A = (dd - 1) * (dd - 2)
    B = dd ** 4 - 6 * dd ** 3 + 13 * dd ** 2 - 8 * dd + 4 * D
    assert B == A * A - 4 * (1 - dd - D)

    def passes(q):
        L = 4 * q - A * A - B
        return L >= 0 and L * L > 4 * A * A * B and (A > 0 or L > 0)

    q = 5
    while True:
        pp = prime_power(q)
        if pp is not None and pp[0] > 3 and passes(q):
            return q
        q += 1


def aubry_perret_bound(partial_degree: int, ideal_points: int) -> float:
    """((A + sqrt(B))^2)/4 as a float, for display only."""
    dd, D = partial_degree, ideal_points
    A = (dd - 1) * (dd - 2)
    B = dd ** 4 - 6 * dd ** 3 + 13 * dd ** 2 - 8 * dd + 4 * D
    return (A + math.sqrt(B)) ** 2 / 4
