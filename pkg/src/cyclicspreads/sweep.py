"""Exhaustive sweep over all monic cubics of F_{q^2}[x].

Cubic x^3 + c2 x^2 + c1 x + c0 has index c0 + c1 Q + c2 Q^2 (Q = q^2).

Irreducibility: a cubic is reducible iff it has a root, so every
(x - r)(x^2 + b x + c) is marked.  Spread condition: on the unit circle
~P(z) = z^3 P(z)^q, so P (with no circle root) satisfies it iff
z -> 3 log z + (q-1) log P(z)  (mod Q-1) is injective on the circle.
Work is sharded by c2.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gf import FieldTower
from .poly import Poly
from .families import make_p_family


def _add(F, a, b):
    if hasattr(F, "add_arr"):
        return F.add_arr[a, b]
    return F.vadd(a, b)


def reducible_mask(T: FieldTower) -> np.ndarray:
    F = T.fq2
    Q = F.size
    mask = np.zeros(Q ** 3, dtype=bool)
    b = np.repeat(np.arange(Q, dtype=np.int64), Q)
    c = np.tile(np.arange(Q, dtype=np.int64), Q)
    for r in range(Q):
        nr = F.neg(r)
        rr = np.full(b.size, nr)
        c2 = _add(F, b, rr)                      # b - r
        c1 = _add(F, c, F.vmul(rr, b))           # c - r b
        c0 = F.vmul(rr, c)                       # -r c
        mask[c0 + c1 * Q + c2 * Q * Q] = True
    return mask


def _shard(T: FieldTower, c2: int, red: np.ndarray):
    F = T.fq2
    Q, q = F.size, T.q
    idx = np.arange(Q * Q, dtype=np.int64)
    c0 = idx % Q
    c1 = idx // Q
    irr = ~red[c2 * Q * Q:(c2 + 1) * Q * Q]
    c0, c1 = c0[irr], c1[irr]
    keys = np.empty((c0.size, q + 1), dtype=np.int64)
    for j, z in enumerate(T.unit_circle):
        const = F.add(F.pow(z, 3), F.mul(c2, F.mul(z, z)))
        v = _add(F, _add(F, F.vmul(c1, np.full(c1.size, z)), c0), np.full(c0.size, const))
        assert not (v == 0).any()
        keys[:, j] = (3 * int(F.log(z)) + (q - 1) * F.log_arr[v]) % F.order
    keys.sort(axis=1)
    ok = ~(keys[:, 1:] == keys[:, :-1]).any(axis=1)
    return int(irr.sum()), np.stack([c0[ok], c1[ok], np.full(int(ok.sum()), c2)], axis=1)


@dataclass
class SweepResult:
    q: int
    n_monic: int
    n_irreducible: int
    c1_cubics: np.ndarray          # rows (c0, c1, c2)
    seconds: float

    @property
    def total(self) -> int:
        return len(self.c1_cubics)


def sweep_cubics(T: FieldTower, threads: int = 1) -> SweepResult:
    t0 = time.perf_counter()
    Q = T.fq2.size
    red = reducible_mask(T)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        parts = list(ex.map(lambda c2: _shard(T, c2, red), range(Q)))
    n_irr = sum(p[0] for p in parts)
    rows = np.concatenate([p[1] for p in parts]) if parts else np.zeros((0, 3), dtype=np.int64)
    order = np.lexsort((rows[:, 0], rows[:, 1], rows[:, 2]))
    return SweepResult(T.q, Q ** 3, n_irr, rows[order], time.perf_counter() - t0)


def cubic_of_row(T: FieldTower, row) -> Poly:
    return Poly(T, (int(row[0]), int(row[1]), int(row[2]), 1))


# -- closed-form counts ------------------------------------------------------------


def expected_counts(q: int) -> dict[str, int]:
    one = q % 3 == 1
    return {
        "total": q * (q - 1) ** 2 * (q + 1) // 3 if one else q * (q - 1) * (q + 1) ** 2 // 3,
        "P": (q + 1) * (q - 3) * (q * q - 1) // 3 if one else (q + 1) * (q - 1) * (q * q - 1) // 3,
        "Q": (q - 1) * (q + 1) ** 2 // 3,
        "B": 2 * (q * q - 1) // 3 if one else 0,
        "P_delta_1": 2 * (q * q - 1) // 3,
        "classes": (q - 1) // 3 if one else (q + 1) // 3,
        "class_union": q * (q - 1) * (q * q - 1) // 3 if one else q * (q + 1) * (q * q - 1) // 3,
    }


@dataclass
class FamilyTally:
    B: int = 0
    P: int = 0
    Q: int = 0
    P_delta_1: int = 0
    pdelta1_deltas: list = field(default_factory=list)


def family_tally(T: FieldTower, rows: np.ndarray) -> FamilyTally:
    """Sort spread-condition cubics into families by coefficient pattern.

    B: delta = gamma = 0.  Q: gamma^{q+1} = 9 and theta = -delta gamma / 9.
    Everything else is in the P family (checked elsewhere by classify_cubic).
    """
    F = T.fq2
    nine = 9 % T.p
    out = FamilyTally()
    for c0, c1, c2 in rows.tolist():
        delta, gamma, theta = F.neg(c2), F.neg(c1), F.neg(c0)
        if delta == 0 and gamma == 0:
            out.B += 1
        elif T.norm(gamma) == nine and theta == F.neg(F.div(F.mul(delta, gamma), nine)):
            out.Q += 1
        else:
            out.P += 1
        if make_p_family(T, delta, 1).coeffs == (c0, c1, c2, 1):
            out.P_delta_1 += 1
            out.pdelta1_deltas.append(delta)
    return out
