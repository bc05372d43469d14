"""Cyclic 2-spreads of V(6,q) = F_{q^6} and the linear space they induce.

A vector of F_{q^6} is its field code; its F_q-coordinates are the base-q
digits of the code (basis 1, t, s, ts, s^2, ts^2).  The line
l_eps = {x - eps x^q : x in F_{q^2}} is spanned over F_q by 1 - eps and
t - eps t^q, and the candidate spread is its orbit under
C = <g^{q+1}>, |C| = (q-1)(q^4+q^2+1).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .gf import FieldError, FieldTower
from .poly import Poly, is_irreducible


# -- F_q linear algebra on coordinate vectors --------------------------------------


def coords(T: FieldTower, x: int) -> list[int]:
    """Six F_q coordinates of an F_{q^6} code."""
    q = T.q
    out = []
    for _ in range(6):
        x, r = divmod(x, q)
        out.append(r)
    return out


def from_coords(T: FieldTower, v) -> int:
    code = 0
    for c in reversed(list(v)):
        code = code * T.q + c
    return code


def rref_key(T: FieldTower, vectors) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon basis over F_q of the span of the given vectors."""
    Fq = T.fq
    rows = [list(v) for v in vectors]
    out = []
    col = 0
    r = 0
    n = len(rows[0]) if rows else 0
    while r < len(rows) and col < n:
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fq.inv(rows[r][col])
        rows[r] = [Fq.mul(c, inv) for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [Fq.sub(a, Fq.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
    out = [tuple(row) for row in rows[:r]]
    return tuple(out)


def span_points(T: FieldTower, b1: int, b2: int) -> np.ndarray:
    """All q^2 F_q-combinations a b1 + b b2 (codes), zero included."""
    F6 = T.fq6
    q = T.q
    a = np.arange(q, dtype=np.int64)
    A = np.repeat(a, q)
    B = np.tile(a, q)
    return F6.vadd(_fq_scale(T, A, b1), _fq_scale(T, B, b2))


def _fq_scale(T: FieldTower, scal: np.ndarray, x: int) -> np.ndarray:
    F6 = T.fq6
    if x == 0:
        return np.zeros_like(scal)
    return F6.vmul(scal, np.full_like(scal, x))


# -- lines and spreads -------------------------------------------------------------


@dataclass(frozen=True)
class SpreadLine:
    b1: int
    b2: int
    key: tuple

    def points(self, T: FieldTower) -> np.ndarray:
        return span_points(T, self.b1, self.b2)

    def basis_coords(self):
        return self.key


def make_line(T: FieldTower, b1: int, b2: int) -> SpreadLine:
    key = rref_key(T, [coords(T, b1), coords(T, b2)])
    if len(key) != 2:
        raise FieldError("basis vectors are F_q-dependent")
    return SpreadLine(b1, b2, key)


def build_line(T: FieldTower, eps: int) -> SpreadLine:
    """l_eps = <x - eps x^q : x in F_{q^2}>."""
    F6 = T.ensure_fq6_tables()
    if eps < T.fq2.size and eps and T.norm(eps) == 1:
        raise FieldError("eps^{q+1} = 1: l_eps is degenerate")
    t = T.t
    tq = T.fq2.neg(t)   # t^q = -t
    b1 = F6.sub(1, eps)
    b2 = F6.sub(t, F6.mul(eps, tq))
    return make_line(T, b1, b2)


def c_generator(T: FieldTower) -> int:
    F6 = T.ensure_fq6_tables()
    return F6.exp(T.q + 1)


def c_order(T: FieldTower) -> int:
    q = T.q
    return (q - 1) * (q ** 4 + q ** 2 + 1)


@dataclass
class Spread:
    tower: FieldTower
    lines: list[SpreadLine]
    points: np.ndarray            # (n_lines, q^2 - 1) nonzero point codes, rows sorted
    eps: int | None = None
    poly: Poly | None = None
    group_order: int = 0

    def __len__(self):
        return len(self.lines)


def _nonzero_points(T: FieldTower, line: SpreadLine) -> np.ndarray:
    pts = line.points(T)
    return np.sort(pts[pts != 0])


def orbit_under_C(T: FieldTower, line: SpreadLine, eps: int | None = None, poly=None,
                  step: int | None = None) -> Spread:
    """{c l : c in C}, distinct subspaces only.

    ``step`` is the log of the group generator (q+1 for C, 1 for all of F_{q^6}^*).
    """
    F6 = T.ensure_fq6_tables()
    q = T.q
    step = q + 1 if step is None else step
    n = F6.order // step
    base = _nonzero_points(T, line)
    logs = F6.log_arr[base]
    k = np.arange(n, dtype=np.int64) * step
    pts = F6.exp_arr[(logs[None, :] + k[:, None]) % F6.order]
    pts.sort(axis=1)
    uniq, first = np.unique(pts, axis=0, return_index=True)
    order = np.sort(first)
    lines = []
    for i in order:
        c = F6.exp(step * int(i))
        lines.append(make_line(T, F6.mul(c, line.b1), F6.mul(c, line.b2)))
    return Spread(T, lines, pts[order], eps, poly, n)


@dataclass(frozen=True)
class SpreadCertificate:
    valid: bool
    n_lines: int
    expected_lines: int
    marks: int
    uncovered: int | None = None      # least vector on no line
    doubly_covered: int | None = None  # least vector on two or more lines
    cover_count: int | None = None
    lines_through: tuple = ()


def verify_spread(S: Spread) -> SpreadCertificate:
    T = S.tower
    q = T.q
    N = q ** 6
    counts = np.bincount(S.points.ravel(), minlength=N)
    expected = q ** 4 + q ** 2 + 1
    bad = np.nonzero(counts[1:] != 1)[0]
    n = len(S.lines)
    if bad.size == 0 and n == expected:
        return SpreadCertificate(True, n, expected, int(counts.sum()))
    zero = np.nonzero(counts[1:] == 0)[0]
    many = np.nonzero(counts[1:] > 1)[0]
    unc = int(zero[0]) + 1 if zero.size else None
    dbl = cnt = None
    through: tuple = ()
    if many.size:
        dbl = int(many[0]) + 1
        cnt = int(counts[dbl])
        through = tuple(int(i) for i in np.nonzero((S.points == dbl).any(axis=1))[0])
    return SpreadCertificate(False, n, expected, int(counts.sum()), unc, dbl, cnt, through)


def roots_in_fq6(T: FieldTower, P: Poly) -> list[int]:
    F6 = T.ensure_fq6_tables()
    xs = np.arange(F6.size, dtype=np.int64)
    acc = np.zeros(F6.size, dtype=np.int64)
    for c in reversed(P.coeffs):
        acc = F6.vadd(F6.vmul(acc, xs), np.full(F6.size, c))
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def spread_from_poly(P: Poly, root_index: int = 0) -> Spread:
    T = P.tower
    if P.degree != 3 or not is_irreducible(P):
        raise FieldError("spread_from_poly needs an irreducible cubic")
    roots = roots_in_fq6(T, P)
    assert len(roots) == 3
    eps = roots[root_index]
    return orbit_under_C(T, build_line(T, eps), eps, P)


def desarguesian(T: FieldTower) -> Spread:
    """{a F_{q^2}}: the orbit of l_0 under all of F_{q^6}^*.

    C alone is transitive on it only when 3 does not divide q+1.
    """
    return orbit_under_C(T, build_line(T, 0), 0, step=1)


def export_lines(S: Spread, path) -> int:
    """One row per line: the two RREF basis vectors as 12 F_p integers (prime q)."""
    T = S.tower
    if T.h != 1:
        raise FieldError("CSV export of F_p coordinates is implemented for prime q")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for ln in S.lines:
            w.writerow([c for row in ln.key for c in row])
    return len(S.lines)


# -- the induced linear space ------------------------------------------------------


@dataclass
class IncidenceStructure:
    """Points are F_{q^6}; lines are cosets u + U for U in the spread."""

    spread: Spread
    line_of: np.ndarray                  # nonzero point -> index of its spread line
    subspaces: list[np.ndarray] = field(default_factory=list)  # points of U incl. 0

    @property
    def tower(self):
        return self.spread.tower

    @property
    def n_points(self) -> int:
        return self.tower.q ** 6

    @property
    def n_lines(self) -> int:
        return len(self.spread) * self.tower.q ** 4

    @property
    def points_per_line(self) -> int:
        return self.tower.q ** 2

    def coset(self, u: int, k: int) -> np.ndarray:
        """Points of u + U_k."""
        F6 = self.tower.fq6
        return F6.vadd(np.full(self.subspaces[k].size, u), self.subspaces[k])

    def line_through(self, u: int, v: int) -> tuple[int, int]:
        """(spread index, canonical coset rep) of the unique line through u != v."""
        if u == v:
            raise ValueError("need distinct points")
        F6 = self.tower.fq6
        k = int(self.line_of[F6.sub(u, v)])
        return k, int(self.coset(u, k).min())

    def line_points(self, line: tuple[int, int]) -> np.ndarray:
        return self.coset(line[1], line[0])


def build_linear_space(S: Spread) -> IncidenceStructure:
    if not verify_spread(S).valid:
        raise FieldError("not a spread")
    T = S.tower
    line_of = np.full(T.q ** 6, -1, dtype=np.int64)
    for i, row in enumerate(S.points):
        line_of[row] = i
    subs = [np.concatenate(([0], row)) for row in S.points]
    return IncidenceStructure(S, line_of, subs)


@dataclass(frozen=True)
class AxiomReport:
    pairs_checked: int
    axiom_i: bool
    line_pairs_checked: int
    axiom_ii: bool
    translations_checked: int
    translations_ok: bool
    cosets_per_subspace: int


def check_axioms(I: IncidenceStructure, rng, n_pairs=10_000, n_line_pairs=2_000, n_trans=100) -> AxiomReport:
    T = I.tower
    F6 = T.fq6
    N = I.n_points
    ok_i = True
    for _ in range(n_pairs):
        u, v = rng.sample(range(N), 2)
        ln = I.line_through(u, v)
        pts = I.line_points(ln)
        if not (np.any(pts == u) and np.any(pts == v)):
            ok_i = False
            break
        # any other spread element through u misses v
        k2 = (ln[0] + 1 + rng.randrange(len(I.spread) - 1)) % len(I.spread)
        if np.any(I.coset(u, k2) == v):
            ok_i = False
            break
    ok_ii = True
    for _ in range(n_line_pairs):
        a = (rng.randrange(len(I.spread)), rng.randrange(N))
        b = (rng.randrange(len(I.spread)), rng.randrange(N))
        A, B = I.coset(a[1], a[0]), I.coset(b[1], b[0])
        same = a[0] == b[0] and int(A.min()) == int(B.min())
        if not same and np.intersect1d(A, B).size > 1:
            ok_ii = False
            break
    ok_t = True
    for _ in range(n_trans):
        t = rng.randrange(N)
        u, v = rng.sample(range(N), 2)
        ln = I.line_points(I.line_through(u, v))
        img = np.sort(F6.vadd(ln, np.full(ln.size, t)))
        ln2 = np.sort(I.line_points(I.line_through(F6.add(u, t), F6.add(v, t))))
        if not np.array_equal(img, ln2):
            ok_t = False
            break
    # cosets of one spread element partition the points
    U = I.subspaces[0]
    allp = np.arange(N, dtype=np.int64)
    mins = np.full(N, N, dtype=np.int64)
    for x in U:
        mins = np.minimum(mins, F6.vadd(allp, np.full(N, x)))
    ncos = np.unique(mins).size
    return AxiomReport(n_pairs, ok_i, n_line_pairs, ok_ii, n_trans, ok_t, ncos)
