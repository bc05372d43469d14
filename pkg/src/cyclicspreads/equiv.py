"""Equivalence of cubics under U = {phi_{u,v} = [[u^q, v], [v^q, u]]}.

phi_{u,v} (with a Frobenius twist sigma and a scale lambda) sends P to

    Q(x) = lambda (u + v^q x)^d P^sigma((v + u^q x) / (u + v^q x)).

Scaling (u, v) by k in F_q^* gives the same transform up to a scalar, so the
witness search runs over U / F_q^*, which has q(q^2 - 1) elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf import FieldError, FieldTower
from .poly import Poly, is_irreducible, roots_in_fq2
from .families import make_p_family, p_family_c1, make_g3rho, g3_rhos


@dataclass(frozen=True)
class UElement:
    u: int
    v: int

    def det(self, T: FieldTower) -> int:
        return T.fq2.sub(T.norm(self.u), T.norm(self.v))

    def matrix(self, T: FieldTower):
        return ((T.frob(self.u), self.v), (T.frob(self.v), self.u))


@dataclass(frozen=True)
class EquivWitness:
    u: int
    v: int
    sigma: int = 0
    lam: int = 1


IDENTITY = EquivWitness(1, 0, 0, 1)


def _check_u(T: FieldTower, u: int, v: int):
    if T.norm(u) == T.norm(v):
        raise FieldError("degenerate phi_{u,v}: u^{q+1} = v^{q+1}")


def mobius_apply(T: FieldTower, w: EquivWitness, P: Poly, d: int | None = None) -> Poly:
    _check_u(T, w.u, w.v)
    Ps = P.frob(w.sigma) if w.sigma else P
    out = Ps.compose_linear((w.v, T.frob(w.u)), (w.u, T.frob(w.v)), d)
    return out.scale(w.lam) if w.lam != 1 else out


def mobius_monic(T: FieldTower, u: int, v: int, sigma: int, P: Poly) -> Poly:
    return mobius_apply(T, EquivWitness(u, v, sigma, 1), P).monic()


def compose(T: FieldTower, w1: EquivWitness, w2: EquivWitness) -> EquivWitness:
    """Witness for 'apply w1, then w2'."""
    F = T.fq2
    u1, v1 = w1.u, w1.v
    if w2.sigma:
        u1, v1 = T.frob(u1), T.frob(v1)
    u = F.add(F.mul(u1, w2.u), F.mul(T.frob(v1), w2.v))
    v = F.add(F.mul(T.frob(u1), w2.v), F.mul(v1, w2.u))
    lam1 = T.frob(w1.lam) if w2.sigma else w1.lam
    return EquivWitness(u, v, (w1.sigma + w2.sigma) % 2, F.mul(w2.lam, lam1))


def coset_reps(T: FieldTower) -> list[int]:
    """Least element of each coset of F_q^* in F_{q^2}^*, ascending."""
    F, q = T.fq2, T.q
    seen = set()
    reps = []
    for x in range(1, F.size):
        k = F.pow(x, q - 1)
        if k not in seen:
            seen.add(k)
            reps.append(x)
    assert len(reps) == q + 1
    return reps


def u_mod_scalars(T: FieldTower) -> list[tuple[int, int]]:
    """Canonical representatives of U / F_q^* in search order."""
    reps = coset_reps(T)
    out = []
    for u in reps:
        nu = T.norm(u)
        for v in range(T.fq2.size):
            if T.norm(v) != nu:
                out.append((u, v))
    out.extend((0, v) for v in reps)
    assert len(out) == T.q * (T.q ** 2 - 1)
    return out


def _require_cubic(P: Poly):
    if P.degree != 3 or not P.is_monic():
        raise FieldError("expected a monic cubic")
    if not is_irreducible(P):
        raise FieldError("expected an irreducible cubic")


def are_equivalent(P: Poly, Q: Poly, projective: bool = True) -> EquivWitness | None:
    """First witness (canonical scan order) mapping P to Q, or None."""
    _require_cubic(P)
    _require_cubic(Q)
    T = P.tower
    sigmas = (0,) if projective else (0, 1)
    for sigma in sigmas:
        for u, v in u_mod_scalars(T):
            img = mobius_apply(T, EquivWitness(u, v, sigma, 1), P)
            if img.scale(T.fq2.inv(img.lead)) == Q:
                return EquivWitness(u, v, sigma, T.fq2.inv(img.lead))
    return None


def orbit_expand(P: Poly, projective: bool = True) -> set[tuple[int, ...]]:
    """All monic images of P under U (and Frobenius unless projective)."""
    T = P.tower
    out = set()
    for sigma in ((0,) if projective else (0, 1)):
        for u, v in u_mod_scalars(T):
            out.add(mobius_monic(T, u, v, sigma, P).coeffs)
    return out


# -- orbit polynomials -------------------------------------------------------------


def f_psi(T: FieldTower, b: int, d: int, c: int, a: int) -> Poly:
    """F_Psi = c x^{Q+1} + a x^Q + b x + d for Psi = [[-b, -d], [c, a]], Q = q^2."""
    F = T.fq2
    if F.sub(F.mul(c, d), F.mul(a, b)) == 0:
        raise FieldError("singular Psi")
    Q = F.size
    co = [0] * (Q + 2)
    co[0], co[1], co[Q], co[Q + 1] = d, b, a, c
    return Poly(T, tuple(co))


def psi_of(T: FieldTower, b, d, c, a):
    F = T.fq2
    return ((F.neg(b), F.neg(d)), (c, a))


def _mat_mul(F, A, B):
    return tuple(tuple(F.add(F.mul(A[i][0], B[0][j]), F.mul(A[i][1], B[1][j])) for j in range(2))
                 for i in range(2))


def _mat_inv(F, A):
    det = F.sub(F.mul(A[0][0], A[1][1]), F.mul(A[0][1], A[1][0]))
    di = F.inv(det)
    return ((F.mul(A[1][1], di), F.neg(F.mul(A[0][1], di))),
            (F.neg(F.mul(A[1][0], di)), F.mul(A[0][0], di)))


def projective_order(T: FieldTower, A) -> int:
    """Order of [A] in PGL(2, q^2)."""
    F = T.fq2
    M = A
    for k in range(1, F.size ** 3):
        if M[0][1] == 0 and M[1][0] == 0 and M[0][0] == M[1][1]:
            return k
        M = _mat_mul(F, M, A)
    raise RuntimeError("order not found")


def conjugate_psi(T: FieldTower, Psi, u: int, v: int):
    """phi^{-1} Psi phi, returned as the (b, d, c, a) parameters of F_Psi."""
    F = T.fq2
    phi = UElement(u, v).matrix(T)
    M = _mat_mul(F, _mat_mul(F, _mat_inv(F, phi), Psi), phi)
    return F.neg(M[0][0]), F.neg(M[0][1]), M[1][0], M[1][1]


def F1(T: FieldTower) -> Poly:
    return f_psi(T, 1, 1, 1, 0)


def F2(T: FieldTower) -> Poly:
    """x^{Q+1} + x^Q + 1."""
    return f_psi(T, 0, 1, 1, 1)


def og_delta(F, y: int) -> int:
    """delta with P_{delta,1} = (x - y)(x + (y+1)/y)(x + 1/(y+1)); F any level holding y."""
    num = F.sub(F.sub(F.pow(y, 3), F.mul(3 % F.p, y)), 1)
    return F.div(num, F.mul(y, F.add(y, 1)))


def _divides_F1(T: FieldTower, P: Poly) -> bool:
    xQ = Poly.x(T).powmod(T.fq2.size, P)
    r = (xQ * Poly.x(T) + Poly.x(T) + 1) % P
    return r.is_zero()


def f1_cubic_factors(T: FieldTower) -> list[tuple[int, Poly]]:
    """Irreducible cubic factors of F_1 = x^{Q+1} + x + 1, each as (delta, P_{delta,1})."""
    out = []
    for delta in range(T.fq2.size):
        P = make_p_family(T, delta, 1)
        if is_irreducible(P) and _divides_F1(T, P):
            out.append((delta, P))
    assert len(out) == (T.fq2.size - 1) // 3
    return out


def f1_roots(T: FieldTower) -> list[int]:
    return roots_in_fq2(F1(T))


def check_f1_product(T: FieldTower, factors) -> bool:
    prod = Poly(T, (1, 1, 1))
    for _, P in factors:
        prod = prod * P
    return prod == F1(T)


def reversal_delta(T: FieldTower, delta: int) -> int:
    """phi_{0,1} sends P_{delta,1} to P_{-delta-3,1} (up to scale)."""
    F = T.fq2
    return F.sub(F.neg(delta), 3)


def stabilizer_f1(T: FieldTower) -> list[UElement]:
    """phi_{u, u^q - u} with u != 0 and nonzero determinant."""
    F = T.fq2
    out = []
    for u in range(1, F.size):
        e = UElement(u, F.sub(T.frob(u), u))
        if e.det(T):
            out.append(e)
    return out


def stabilizer_fixes_f1(T: FieldTower, e: UElement) -> bool:
    img = mobius_apply(T, EquivWitness(e.u, e.v), F1(T), d=T.fq2.size + 1)
    return img.scale(T.fq2.inv(img.lead)) == F1(T)


# -- classes -----------------------------------------------------------------------


@dataclass
class EquivClass:
    rep_delta: int
    f1_deltas: list[int]            # members among the cubic factors of F_1
    p_deltas: list[int]             # every P_{delta,1} in the class (F_1 and F_2 factors)
    size: int | None = None         # number of monic irreducible cubics, once expanded

    def representative(self, T: FieldTower) -> Poly:
        return make_p_family(T, self.rep_delta, 1)


def enumerate_classes(T: FieldTower, with_sizes: bool = False) -> list[EquivClass]:
    F = T.fq2
    factors = f1_cubic_factors(T)
    deltas = [d for d, _ in factors]
    dset = set(deltas)
    stab = stabilizer_f1(T)
    parent = {d: d for d in deltas}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d, P in factors:
        for e in stab:
            img = mobius_monic(T, e.u, e.v, 0, P)
            d2 = F.neg(img.coeff(2))
            assert d2 in dset and make_p_family(T, d2, 1) == img
            ra, rb = find(d), find(d2)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for d in deltas:
        groups.setdefault(find(d), []).append(d)
    classes = []
    for g in groups.values():
        full = sorted(set(g) | {reversal_delta(T, d) for d in g})
        classes.append(EquivClass(rep_delta=full[0], f1_deltas=sorted(g), p_deltas=full))
    classes.sort(key=lambda c: c.rep_delta)
    # Frobenius never merges distinct classes
    where = {d: i for i, c in enumerate(classes) for d in c.p_deltas}
    for i, c in enumerate(classes):
        for d in c.p_deltas:
            assert where[T.frob(d)] == i
    if with_sizes:
        for c in classes:
            c.size = len(orbit_expand(c.representative(T)))
    return classes


def class_of_delta(classes: list[EquivClass], delta: int) -> int | None:
    for i, c in enumerate(classes):
        if delta in c.p_deltas:
            return i
    return None


@dataclass
class DeltaOrbit:
    values: set
    skipped: list = field(default_factory=list)   # (formula, w) with vanishing denominator
    excluded: list = field(default_factory=list)  # w = (1 +- sqrt(-3))/2 on the circle


def delta_orbit(T: FieldTower, delta: int) -> DeltaOrbit:
    """epsilon with P_{epsilon,1} projectively equivalent to P_{delta,1}."""
    F = T.fq2
    if not p_family_c1(T, delta, 1) or not is_irreducible(make_p_family(T, delta, 1)):
        raise FieldError("delta_orbit needs an irreducible P_{delta,1} satisfying the spread condition")
    r3 = T.sqrt_m3()
    half = F.inv(2)
    bad = {F.mul(F.add(1, r3), half), F.mul(F.sub(1, r3), half)}
    out = DeltaOrbit(set())
    mul, add, sub = F.mul, F.add, F.sub
    for w in T.unit_circle:
        if w in bad:
            out.excluded.append(w)
            continue
        w2 = mul(w, w)
        w3 = mul(w2, w)
        A = add(sub(w3, mul(3, w)), 1)          # w^3 - 3w + 1
        B = add(sub(w3, mul(3, w2)), 1)         # w^3 - 3w^2 + 1
        C = sub(w2, w)                          # w(w - 1)
        n1 = add(mul(9 % T.p, C), mul(delta, A))
        d1 = sub(B, mul(delta, C))
        if d1:
            out.values.add(F.div(n1, d1))
        else:
            out.skipped.append((1, w))
        n2 = sub(F.neg(mul(3, B)), mul(delta, A))
        d2 = add(A, mul(delta, C))
        if d2:
            out.values.add(F.div(n2, d2))
        else:
            out.skipped.append((2, w))
    return out


@dataclass
class FengLuReport:
    q: int
    n_classes: int
    g_count: int
    g_classes: list[int]
    new_classes: list[int]
    bound: float

    @property
    def within_bound(self) -> bool:
        return len(self.g_classes) <= self.bound


def feng_lu_coverage(T: FieldTower, classes: list[EquivClass] | None = None) -> FengLuReport:
    if T.q % 3 != 2:
        raise FieldError("Feng-Lu cubics need q = 2 mod 3")
    classes = classes if classes is not None else enumerate_classes(T)
    reps = [c.representative(T) for c in classes]
    gs = {make_g3rho(T, r).coeffs: make_g3rho(T, r) for r in g3_rhos(T)}
    hit = set()
    for g in gs.values():
        idx = [i for i, R in enumerate(reps) if are_equivalent(g, R, projective=True) is not None]
        assert len(idx) == 1
        hit.add(idx[0])
    return FengLuReport(T.q, len(classes), len(gs), sorted(hit),
                        [i for i in range(len(classes)) if i not in hit], (T.q + 1) / 4)
