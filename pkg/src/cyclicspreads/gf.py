"""Finite field tower F_p < F_q < F_{q^2} < F_{q^6}.

Every element, at every level, is stored as a plain ``int`` code: the
base-p digits of its coordinate vector over F_p, least significant first.
A level-L element with coefficients (c0, c1, ...) over the level below has
code ``c0 + c1*B + c2*B**2 + ...`` where B is the size of the lower level.
Two consequences are used everywhere:

* embedding a lower-level element is the identity on codes, and membership
  of the lower level is ``code < lower.size``;
* addition at any level is digit-wise addition mod p.

The integer order on codes is the canonical element order used for every
tie-break in the package.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

# Fields at most this large get log/exp tables at construction time.
TABLE_LIMIT = 1 << 15
# Flat addition tables are only built up to this many elements.
ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = 3
    while r * r <= n:
        if n % r == 0:
            return False
        r += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the desk-scale orders used here."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, h) with n == p**h, or None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, h), = f.items()
    return p, h


def radical(n: int) -> int:
    return math.prod(factorize(n)) if n > 1 else 1


class Field:
    """One level of the tower.

    ``base is None`` means the prime field F_p. Otherwise elements are
    polynomials over ``base`` reduced modulo the monic ``modulus`` (tuple of
    base codes, low degree first, leading 1 included).
    """

    def __init__(self, name: str, p: int, base: "Field | None" = None,
                 modulus: tuple[int, ...] | None = None):
        self.name = name
        self.p = p
        self.base = base
        self.modulus = modulus
        if base is None:
            self.ext_degree = 1
            self.degree = 1
            self.size = p
        else:
            assert modulus is not None and modulus[-1] == 1
            self.ext_degree = len(modulus) - 1
            self.degree = base.degree * self.ext_degree
            self.size = base.size ** self.ext_degree
        self.order = self.size - 1
        self._pw = [p ** i for i in range(self.degree)]
        self.factors = factorize(self.order) if self.order > 1 else {}
        self.primitive: int | None = None
        self._nonsquare: int | None = None
        self.has_tables = False
        self._arrays = None
        self.mul = self._mul_slow
        self.add = self._add_digits
        if base is None:
            self.mul = self._mul_prime
            self.add = self._add_prime
        if self.size <= TABLE_LIMIT:
            self.build_tables()

    def __repr__(self):
        return f"Field({self.name}, size={self.size})"

    # -- digits and coefficients -------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        return sum(int(d) * w for d, w in zip(ds, self._pw))

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficients over the next level down."""
        if self.base is None:
            return (a,)
        B = self.base.size
        out = []
        for _ in range(self.ext_degree):
            a, r = divmod(a, B)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        if self.base is None:
            (c,) = cs
            return c % self.p
        B = self.base.size
        code = 0
        for c in reversed(list(cs)):
            if not 0 <= c < B:
                raise FieldError(f"coefficient {c} out of range for {self.base.name}")
            code = code * B + c
        return code

    def contains(self, a: int) -> bool:
        return 0 <= a < self.size

    # -- arithmetic --------------------------------------------------------------

    def _add_prime(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def _mul_prime(self, a: int, b: int) -> int:
        return a * b % self.p

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        w = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * w
            w *= p
        return out

    def _add_table(self, a: int, b: int) -> int:
        return self._addt[a * self.size + b]

    def neg(self, a: int) -> int:
        if self.base is None:
            return -a % self.p
        p = self.p
        out = 0
        w = 1
        while a:
            a, r = divmod(a, p)
            out += (-r % p) * w
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        base = self.base
        ca, cb = self.coeffs(a), self.coeffs(b)
        n = self.ext_degree
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(ca):
            if not x:
                continue
            for j, y in enumerate(cb):
                if y:
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        mod = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for i in range(n):
                    if mod[i]:
                        prod[k - n + i] = base.sub(prod[k - n + i], base.mul(c, mod[i]))
        return self.from_coeffs(prod[:n])

    def _mul_table(self, a: int, b: int) -> int:
        if a and b:
            return self._exp[self._log[a] + self._log[b]]
        return 0

    def pow(self, a: int, e: int) -> int:
        if self.has_tables:
            if a == 0:
                if e < 0:
                    raise ZeroDivisionError("0 has no inverse")
                return 1 if e == 0 else 0
            return self._exp[(self._log[a] * e) % self.order]
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        if self.has_tables:
            return self._exp[(-self._log[a]) % self.order]
        if self.base is None:
            return pow(a, -1, self.p)
        return self.pow(a, self.order - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def log(self, a: int) -> int:
        """Discrete log to the field's primitive element."""
        if a == 0:
            raise ZeroDivisionError("log(0)")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self.order]

    # -- structure ---------------------------------------------------------------

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("order of 0 is undefined")
        n = self.order
        for r in self.factors:
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.pow(a, self.order // 2) == 1

    def is_cube(self, a: int) -> bool:
        if a == 0 or self.order % 3:
            return True
        return self.pow(a, self.order // 3) == 1

    def least_nonsquare(self) -> int:
        if self._nonsquare is None:
            self._nonsquare = next(c for c in range(1, self.size) if not self.is_square(c))
        return self._nonsquare

    def sqrt(self, a: int) -> int | None:
        """Tonelli-Shanks; the nonsquare witness is the least nonsquare code."""
        if a == 0:
            return 0
        if not self.is_square(a):
            return None
        s, Q = 0, self.order
        while Q % 2 == 0:
            s += 1
            Q //= 2
        z = self.least_nonsquare()
        M = s
        c = self.pow(z, Q)
        t = self.pow(a, Q)
        R = self.pow(a, (Q + 1) // 2)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = self.mul(t2, t2)
                i += 1
            b = self.pow(c, 1 << (M - i - 1))
            M = i
            c = self.mul(b, b)
            t = self.mul(t, c)
            R = self.mul(R, b)
        return R

    # -- tables ------------------------------------------------------------------

    def _find_primitive(self) -> int:
        for g in range(2 if self.size > 2 else 1, self.size):
            if all(self.pow(g, self.order // r) != 1 for r in self.factors):
                return g
        return 1

    def build_tables(self) -> None:
        """Log/exp tables from the F_p-linear map 'multiply by g'."""
        if self.has_tables:
            return
        g = self._find_primitive()
        n, D, p = self.order, self.degree, self.p
        # matrix of x -> g*x acting on digit row vectors
        M = np.array([self.digits(self.mul(g, self._pw[i])) for i in range(D)], dtype=np.int64)
        rows = np.zeros((1, D), dtype=np.int64)
        rows[0, 0] = 1
        step = M.copy()
        while rows.shape[0] < n:
            rows = np.vstack([rows, rows @ step % p])
            step = step @ step % p
        rows = rows[:n]
        exp_arr = rows @ np.array(self._pw, dtype=np.int64)
        log_arr = np.full(self.size, -1, dtype=np.int64)
        log_arr[exp_arr] = np.arange(n, dtype=np.int64)
        if n > 1 and (log_arr[1:] < 0).any():
            raise FieldError(f"{self.name}: {g} is not primitive; bad modulus?")
        self.primitive = g
        self.exp_arr, self.log_arr = exp_arr, log_arr
        self._exp = exp_arr.tolist() * 2
        self._log = log_arr.tolist()
        self.has_tables = True
        if self.base is not None:
            self.mul = self._mul_table
            if self.size <= ADD_TABLE_LIMIT:
                a = np.arange(self.size)
                self.add_arr = self.vadd(a[:, None], a[None, :])
                self._addt = self.add_arr.ravel().tolist()
                self.add = self._add_table

    # -- vectorized helpers ------------------------------------------------------

    def vdigits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return [(a // w) % self.p for w in self._pw]

    def vadd(self, a, b):
        da, db = self.vdigits(a), self.vdigits(b)
        return sum(((x + y) % self.p) * w for x, y, w in zip(da, db, self._pw))

    def vneg(self, a):
        return sum(((-x) % self.p) * w for x, w in zip(self.vdigits(a), self._pw))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp_arr[(self.log_arr[a] + self.log_arr[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        out = self.exp_arr[(self.log_arr[a] * e) % self.order]
        return np.where(a == 0, 0 if e else 1, out)


@dataclass(frozen=True, eq=False)
class FieldTower:
    p: int
    h: int
    q: int
    fp: Field
    fq: Field
    fq2: Field
    fq6: Field
    nonsquare: int           # n with F_{q^2} = F_q[t]/(t^2 - n)
    cubic: tuple[int, ...]   # monic irreducible cubic over F_{q^2}, low degree first
    factors_q2m1: dict
    factors_q6m1: dict

    def __repr__(self):
        return f"FieldTower(p={self.p}, h={self.h})"

    @property
    def t(self) -> int:
        """The generator t of F_{q^2} over F_q (t^2 = nonsquare)."""
        return self.q

    def level(self, name: str) -> Field:
        return {"Fp": self.fp, "Fq": self.fq, "Fq2": self.fq2, "Fq6": self.fq6}[name]

    @functools.cached_property
    def unit_circle(self) -> tuple[int, ...]:
        """The q+1 elements of F_{q^2} with x^{q+1} = 1, in canonical order."""
        F, e = self.fq2, self.q + 1
        return tuple(x for x in range(1, F.size) if F.pow(x, e) == 1)

    def frob(self, a: int, k: int = 1, field: Field | None = None) -> int:
        """a^{q^k} on codes (default level F_{q^2})."""
        F = field or self.fq2
        if F.order <= 1:
            return a
        return F.pow(a, pow(self.q, k, F.order)) if a else 0

    def norm(self, a: int) -> int:
        """F_{q^2} -> F_q norm a^{q+1}."""
        return self.fq2.pow(a, self.q + 1)

    def sqrt_m3(self) -> int:
        """The Tonelli-Shanks square root of -3 in F_{q^2}."""
        F = self.fq2
        return F.sqrt(F.neg(3 % self.p))

    def ensure_fq6_tables(self) -> Field:
        self.fq6.build_tables()
        return self.fq6


def _least_monic_irreducible(base: Field, degree: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of the given degree.

    Coefficient tuples (c_{d-1}, ..., c_0) are scanned in ascending order.
    Irreducibility for degree <= 3 is root-freeness; for larger degrees a
    trial field is built and checked for a primitive element of full order.
    """
    import itertools

    B = base.size
    for top in itertools.product(range(B), repeat=degree):
        coeffs = tuple(reversed(top)) + (1,)
        if coeffs[0] == 0:
            continue
        if degree <= 3:
            if not any(_eval_codes(base, coeffs, x) == 0 for x in range(B)):
                return coeffs
        else:
            from .poly import _is_irreducible_list
            if _is_irreducible_list(base, list(coeffs)):
                return coeffs
    raise FieldError("no irreducible polynomial found")


def _eval_codes(F: Field, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


@functools.lru_cache(maxsize=None)
def make_tower(p: int, h: int = 1) -> FieldTower:
    """Build the canonical tower for q = p**h (p prime, p > 3).

    Same (p, h) always returns the same object.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p = {p} is not prime")
    if p <= 3:
        raise FieldError("characteristic 2 and 3 are excluded (need p > 3)")
    if h < 1:
        raise FieldError("extension degree h must be >= 1")
    fp = Field("Fp", p)
    if h == 1:
        fq = fp
    else:
        fq = Field("Fq", p, fp, _least_monic_irreducible(fp, h))
    q = fq.size
    n = fq.least_nonsquare()
    fq2 = Field("Fq2", p, fq, (fq.neg(n), 0, 1))
    cubic = _least_monic_irreducible(fq2, 3)
    fq6 = Field("Fq6", p, fq2, cubic)
    if h == 1:
        fq.name = "Fq"
    return FieldTower(p=p, h=h, q=q, fp=fp, fq=fq, fq2=fq2, fq6=fq6,
                      nonsquare=n, cubic=cubic,
                      factors_q2m1=factorize(q * q - 1), factors_q6m1=factorize(q ** 6 - 1))


def tower_for_q(q: int) -> FieldTower:
    pp = prime_power(q)
    if pp is None:
        raise FieldError(f"q = {q} is not a prime power")
    return make_tower(*pp)


# -- element wrapper ---------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    """Value-semantic element of one level of a tower."""

    field: Field
    code: int

    def __post_init__(self):
        if not self.field.contains(self.code):
            raise FieldError(f"code {self.code} out of range for {self.field.name}")

    @property
    def level(self) -> str:
        return self.field.name

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is self.field:
                return other.code
            if other.code < other.field.size and other.field.degree <= self.field.degree:
                return other.code
            raise FieldError(f"cannot combine {self.level} and {other.level}")
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.field, code)

    def __add__(self, other):
        return self._wrap(self.field.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._coerce(other), self.code))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.code, self._coerce(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.field.div(self._coerce(other), self.code))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def lift(self, field: Field) -> "FieldElement":
        if field.degree % self.field.degree:
            raise FieldError("target level does not contain this level")
        return FieldElement(field, self.code)

    def in_level(self, field: Field) -> bool:
        return self.code < field.size

    def __str__(self):
        from .textfmt import format_element
        return format_element(self.field, self.code)


@dataclass(frozen=True)
class CharTests:
    is_square: bool
    is_cube: bool
    sqrt: FieldElement | None
    order: int | None


def element(tower: FieldTower, level: str, code_or_coeffs) -> FieldElement:
    F = tower.level(level)
    if isinstance(code_or_coeffs, int):
        return FieldElement(F, code_or_coeffs)
    return FieldElement(F, F.from_coeffs(code_or_coeffs))


def frobenius(tower: FieldTower, x: FieldElement, k: int) -> FieldElement:
    """x^{q^k}."""
    return FieldElement(x.field, tower.frob(x.code, k, x.field))


def on_unit_circle(tower: FieldTower, x: FieldElement) -> bool:
    if not x.in_level(tower.fq2):
        raise FieldError("unit-circle test is defined on F_{q^2}")
    return tower.fq2.pow(x.code, tower.q + 1) == 1 if x.code else False


def char_tests(x: FieldElement) -> CharTests:
    F = x.field
    sq = F.is_square(x.code)
    root = F.sqrt(x.code)
    return CharTests(
        is_square=sq,
        is_cube=F.is_cube(x.code),
        sqrt=FieldElement(F, root) if root is not None else None,
        order=F.element_order(x.code) if x.code else None,
    )


def element_order(x: FieldElement) -> int:
    return x.field.element_order(x.code)
