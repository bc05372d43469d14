"""Polynomials over F_{q^2}: tilde involution, G_P / H_P, irreducibility, roots.

Coefficient lists are low degree first and hold field codes. The ``_p*``
helpers work over any :class:`~cyclicspreads.gf.Field`; :class:`Poly`
wraps them for the F_{q^2} level of a tower.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .gf import Field, FieldError, FieldTower


# -- list-level helpers over an arbitrary Field -------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(F: Field, a, b) -> list[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = F.add(x, y) if x and y else (x or y)
    return _trim(out)


def _psub(F: Field, a, b) -> list[int]:
    return _padd(F, a, [F.neg(c) for c in b])


def _pscale(F: Field, a, c: int) -> list[int]:
    if c == 0:
        return []
    return _trim([F.mul(x, c) for x in a])


def _pmul(F: Field, a, b) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    mul, add = F.mul, F.add
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def _pdivmod(F: Field, a, b) -> tuple[list[int], list[int]]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    _trim(r)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv_lead = F.inv(b[-1])
    qt = [0] * (len(r) - db)
    mul, sub = F.mul, F.sub
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = mul(c, inv_lead)
        qt[k - db] = c
        for i in range(db + 1):
            if b[i]:
                r[k - db + i] = sub(r[k - db + i], mul(c, b[i]))
    return _trim(qt), _trim(r[:db])


def _pmod(F: Field, a, b) -> list[int]:
    return _pdivmod(F, a, b)[1]


def _pmonic(F: Field, a) -> list[int]:
    a = _trim(list(a))
    if not a:
        return a
    return _pscale(F, a, F.inv(a[-1]))


def _pgcd(F: Field, a, b) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(F, a, b)
    return _pmonic(F, a)


def _ppowmod(F: Field, base, e: int, m) -> list[int]:
    result = [1]
    base = _pmod(F, base, m)
    while e:
        if e & 1:
            result = _pmod(F, _pmul(F, result, base), m)
        e >>= 1
        if e:
            base = _pmod(F, _pmul(F, base, base), m)
    return result


def _peval(F: Field, a, x: int) -> int:
    acc = 0
    mul, add = F.mul, F.add
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def _is_irreducible_list(F: Field, a) -> bool:
    """Ben-Or: no factor of degree k <= n/2, via gcd(a, x^{|F|^k} - x)."""
    a = _pmonic(F, a)
    n = len(a) - 1
    if n < 1:
        raise FieldError("irreducibility is undefined for constants")
    if n == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(n // 2):
        xp = _ppowmod(F, xp, F.size, a)
        if len(_pgcd(F, a, _psub(F, xp, x))) > 1:
            return False
    return True


# -- Poly --------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial over F_{q^2}; coefficients low degree first."""

    tower: FieldTower
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        _trim(c)
        object.__setattr__(self, "coeffs", tuple(c))

    # construction
    @classmethod
    def from_list(cls, tower, coeffs) -> "Poly":
        return cls(tower, tuple(int(c) for c in coeffs))

    @classmethod
    def x(cls, tower) -> "Poly":
        return cls(tower, (0, 1))

    @classmethod
    def const(cls, tower, c: int) -> "Poly":
        return cls(tower, (c,))

    @classmethod
    def monomial(cls, tower, n: int, c: int = 1) -> "Poly":
        return cls(tower, (0,) * n + (c,))

    @classmethod
    def from_roots(cls, tower, roots) -> "Poly":
        F = tower.fq2
        out = [1]
        for r in roots:
            out = _pmul(F, out, [F.neg(r), 1])
        return cls(tower, tuple(out))

    @property
    def F(self) -> Field:
        return self.tower.fq2

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def _new(self, c) -> "Poly":
        return Poly(self.tower, tuple(c))

    def _other(self, o) -> list[int]:
        if isinstance(o, Poly):
            return list(o.coeffs)
        if isinstance(o, int):
            return [o % self.tower.p] if o % self.tower.p else []
        raise TypeError(type(o))

    def __add__(self, o):
        return self._new(_padd(self.F, self.coeffs, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return self._new(_psub(self.F, self.coeffs, self._other(o)))

    def __rsub__(self, o):
        return self._new(_psub(self.F, self._other(o), self.coeffs))

    def __neg__(self):
        return self._new([self.F.neg(c) for c in self.coeffs])

    def __mul__(self, o):
        return self._new(_pmul(self.F, self.coeffs, self._other(o)))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        return self._new(_pscale(self.F, self.coeffs, c))

    def __divmod__(self, o):
        qt, r = _pdivmod(self.F, self.coeffs, self._other(o))
        return self._new(qt), self._new(r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def __pow__(self, e: int):
        out = [1]
        for _ in range(e):
            out = _pmul(self.F, out, self.coeffs)
        return self._new(out)

    def powmod(self, e: int, m: "Poly") -> "Poly":
        return self._new(_ppowmod(self.F, self.coeffs, e, m.coeffs))

    def gcd(self, o: "Poly") -> "Poly":
        return self._new(_pgcd(self.F, self.coeffs, o.coeffs))

    def monic(self) -> "Poly":
        return self._new(_pmonic(self.F, self.coeffs))

    def __call__(self, x: int) -> int:
        return _peval(self.F, self.coeffs, x)

    def derivative(self) -> "Poly":
        F = self.F
        return self._new([F.mul(c, i % F.p) for i, c in enumerate(self.coeffs)][1:])

    def frob(self, k: int = 1) -> "Poly":
        """Coefficient-wise x -> x^{q^k}."""
        return self._new([self.tower.frob(c, k) for c in self.coeffs])

    def compose_linear(self, num: tuple[int, int], den: tuple[int, int], d: int | None = None) -> "Poly":
        """(c0 + c1 x)^d * P((n0 + n1 x)/(c0 + c1 x)) as a polynomial; d defaults to deg P."""
        F = self.F
        d = self.degree if d is None else d
        npow = [[1]]
        cpow = [[1]]
        for _ in range(d):
            npow.append(_pmul(F, npow[-1], list(num)))
            cpow.append(_pmul(F, cpow[-1], list(den)))
        out: list[int] = []
        for i, a in enumerate(self.coeffs):
            if a:
                out = _padd(F, out, _pscale(F, _pmul(F, npow[i], cpow[d - i]), a))
        return self._new(out)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        from .textfmt import format_poly
        return format_poly(self)


# -- tilde, G_P and H_P ------------------------------------------------------------


def tilde(P: Poly, m: int | None = None) -> Poly:
    """sum_i a_{m-i}^q x^i with m = deg P by default."""
    m = P.degree if m is None else m
    T = P.tower
    return Poly(T, tuple(T.frob(P.coeff(m - i)) for i in range(m + 1)))


@dataclass(frozen=True)
class BiPoly:
    """Dense polynomial in (z, w): ``coeffs[i][j]`` is the z^i w^j coefficient."""

    tower: FieldTower
    coeffs: tuple[tuple[int, ...], ...]

    @property
    def F(self) -> Field:
        return self.tower.fq2

    def coeff(self, i: int, j: int) -> int:
        if 0 <= i < len(self.coeffs) and 0 <= j < len(self.coeffs[i]):
            return self.coeffs[i][j]
        return 0

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.coeffs), max((len(r) for r in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.coeffs)

    def __call__(self, z: int, w: int) -> int:
        F = self.F
        acc = 0
        for row in reversed(self.coeffs):
            acc = F.add(F.mul(acc, z), _peval(F, row, w))
        return acc

    def transpose(self) -> "BiPoly":
        nz, nw = self.shape
        return BiPoly(self.tower, tuple(tuple(self.coeff(i, j) for i in range(nz)) for j in range(nw)))

    def scale(self, c: int) -> "BiPoly":
        F = self.F
        return BiPoly(self.tower, tuple(tuple(F.mul(x, c) for x in r) for r in self.coeffs))

    def _dense(self, nz, nw):
        return [[self.coeff(i, j) for j in range(nw)] for i in range(nz)]

    def __eq__(self, o):
        if not isinstance(o, BiPoly):
            return NotImplemented
        nz = max(self.shape[0], o.shape[0])
        nw = max(self.shape[1], o.shape[1])
        return self._dense(nz, nw) == o._dense(nz, nw)

    def __hash__(self):
        return hash(tuple(tuple(_trim(list(r))) for r in self.coeffs))

    def mul_z_minus_w(self) -> "BiPoly":
        """(z - w) * self."""
        F = self.F
        nz, nw = self.shape
        out = [[0] * (nw + 1) for _ in range(nz + 1)]
        for i in range(nz):
            for j in range(nw):
                c = self.coeff(i, j)
                if c:
                    out[i + 1][j] = F.add(out[i + 1][j], c)
                    out[i][j + 1] = F.sub(out[i][j + 1], c)
        return BiPoly(self.tower, tuple(tuple(r) for r in out))

    def subs_univariate(self, X: Poly, Y: Poly, mod: Poly) -> Poly:
        """self(X(x), Y(x)) reduced modulo ``mod``."""
        F = self.F
        m = mod.coeffs
        zpow = [1]
        out: list[int] = []
        nz, nw = self.shape
        ypows = [[1]]
        for _ in range(1, nw):
            ypows.append(_pmod(F, _pmul(F, ypows[-1], Y.coeffs), m))
        for i in range(nz):
            row: list[int] = []
            for j in range(nw):
                c = self.coeff(i, j)
                if c:
                    row = _padd(F, row, _pscale(F, ypows[j], c))
            out = _padd(F, out, _pmod(F, _pmul(F, row, zpow), m))
            zpow = _pmod(F, _pmul(F, zpow, X.coeffs), m)
        return Poly(self.tower, tuple(out))


def g_h_polys(P: Poly, m: int | None = None) -> tuple[BiPoly, BiPoly]:
    """G_P(z,w) = P(z)~P(w) - ~P(z)P(w) and H_P = G_P/(z-w)."""
    F = P.F
    T = P.tower
    m = P.degree if m is None else m
    Pt = tilde(P, m)
    a = [P.coeff(i) for i in range(m + 1)]
    b = [Pt.coeff(i) for i in range(m + 1)]
    G = [[F.sub(F.mul(a[i], b[j]), F.mul(b[i], a[j])) for j in range(m + 1)] for i in range(m + 1)]
    # synthetic division in z by (z - w); rows are polynomials in w
    H: list[list[int]] = [[] for _ in range(m)]
    carry: list[int] = []
    for k in range(m, 0, -1):
        carry = _padd(F, _trim(list(G[k])), [0] + carry if carry else [])
        H[k - 1] = carry
    rem = _padd(F, _trim(list(G[0])), [0] + carry if carry else [])
    if rem:
        raise ArithmeticError("G_P not divisible by z - w")
    width = m
    Hm = tuple(tuple(r + [0] * (width - len(r))) for r in H)
    return BiPoly(T, tuple(tuple(r) for r in G)), BiPoly(T, Hm)


def gp_hp_divides(P: Poly) -> bool:
    """P(x) | H_P(x^{q^2}, x) and P(x) | G_P(x^{q^2}, x), computed modulo P."""
    G, H = g_h_polys(P)
    X = Poly.x(P.tower).powmod(P.tower.fq2.size, P)
    x = Poly.x(P.tower)
    return (H.subs_univariate(X, x, P).is_zero()
            and G.subs_univariate(X, x, P).is_zero())


# -- irreducibility and roots ------------------------------------------------------


def is_irreducible(P: Poly) -> bool:
    if P.degree < 1:
        raise FieldError("irreducibility test needs deg P >= 1")
    return _is_irreducible_list(P.F, P.coeffs)


def roots_in_fq2(P: Poly) -> list[int]:
    """All roots in F_{q^2} with multiplicity, canonical order."""
    if P.is_zero():
        raise FieldError("zero polynomial has every element as a root")
    F = P.F
    out = []
    c = list(P.coeffs)
    for x in range(F.size):
        while len(c) > 1 and _peval(F, c, x) == 0:
            out.append(x)
            c = _pdivmod(F, c, [F.neg(x), 1])[0]
    return out


def distinct_roots(P: Poly) -> list[int]:
    return sorted(set(roots_in_fq2(P)))


class CubicShape(enum.Enum):
    IRREDUCIBLE = "irreducible"
    THREE_ROOTS = "three_roots"
    ONE_ROOT = "one_root"
    REPEATED_ROOT = "repeated_root"


@dataclass(frozen=True)
class DicksonData:
    s: int
    t: int
    R: int
    mu: int | None
    S: int | None
    shape: CubicShape


def dickson_cubic(tower: FieldTower, s: int, t: int) -> DicksonData:
    """Root structure of x^3 + s x + t over F_{q^2} from R = -4s^3 - 27t^2.

    R a nonzero square: irreducible iff S = (-t + mu*sqrt(-3))/2 is a
    noncube (else three roots). R a nonsquare: exactly one root.
    """
    F = tower.fq2
    p = tower.p
    R = F.sub(F.neg(F.mul(4, F.pow(s, 3))), F.mul(27 % p, F.mul(t, t)))
    if R == 0:
        return DicksonData(s, t, R, 0, None, CubicShape.REPEATED_ROOT)
    if not F.is_square(R):
        return DicksonData(s, t, R, None, None, CubicShape.ONE_ROOT)
    mu = F.div(F.sqrt(R), 9 % p)
    r3 = tower.sqrt_m3()
    half = F.inv(2)
    cands = []
    for sign in (1, -1):
        m = mu if sign == 1 else F.neg(mu)
        S = F.mul(F.add(F.neg(t), F.mul(m, r3)), half)
        cands.append(S)
    nonzero = [S for S in cands if S]
    # S+ * S- = (-s/3)^3, so both signs agree whenever both are nonzero
    cube = [F.is_cube(S) for S in nonzero]
    assert nonzero and len(set(cube)) == 1, "mu-sign disagreement"
    S = nonzero[0]
    shape = CubicShape.THREE_ROOTS if cube[0] else CubicShape.IRREDUCIBLE
    return DicksonData(s, t, R, mu, S, shape)
