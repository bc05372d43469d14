"""Command-line front end.

Exit codes: 0 pass/true, 1 property failure, 2 usage or parse error.
JSON output always carries "schema": "1".
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass

from . import cond, equiv, families, spread, sweep
from .gf import FieldError, make_tower, prime_power
from .poly import is_irreducible
from .textfmt import ParseError, format_coeffs, parse_poly

SCHEMA = "1"
Q_GUARD = 13


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    p: int
    h: int
    verb: str
    threads: int = 1
    fmt: str = "json"
    out: str | None = None
    seed: int = 0


def _el(T, code: int) -> str:
    return format_coeffs(T.fq2, code)


def _tower(args):
    if args.q is not None:
        pp = prime_power(args.q)
        if pp is None:
            raise UsageError(f"q = {args.q} is not a prime power")
        p, h = pp
    elif args.p is not None:
        p, h = args.p, args.h
    else:
        raise UsageError("give --q or --p [--h]")
    try:
        T = make_tower(p, h)
    except FieldError as e:
        raise UsageError(str(e)) from None
    return T


def _guard(T, args):
    if T.q > Q_GUARD and not args.allow_large:
        raise UsageError(f"q = {T.q} exceeds the default guard q <= {Q_GUARD}; pass --allow-large")


def _poly(T, text):
    if text is None:
        raise UsageError("missing polynomial")
    return parse_poly(T, text)


# -- verbs -------------------------------------------------------------------------


def cmd_check(T, args):
    P = _poly(T, args.poly)
    irr = P.degree >= 1 and is_irreducible(P)
    rec = {"schema": SCHEMA, "q": T.q, "poly": str(P), "irreducible": irr}
    if not irr:
        rec["condition1"] = None
        return rec, 1
    direct = cond.condition1_direct(P)
    ok, wit = cond.condition1_zscan(P)
    if direct != ok:
        raise AssertionError("checkers disagree")
    rec["condition1"] = ok
    rec["witness"] = None if wit is None else {"z": _el(T, wit.z), "w": _el(T, wit.w)}
    if args.pp:
        rec["fl_permutation"] = cond.is_permutation_poly(cond.fl_poly(P))
    return rec, 0 if ok else 1


def _tag_record(T, tag):
    if isinstance(tag, families.Binomial):
        return {"family": "B", "theta": _el(T, tag.theta)}
    if isinstance(tag, families.PFamily):
        return {"family": "P", "delta": _el(T, tag.delta), "alpha": _el(T, tag.alpha)}
    if isinstance(tag, families.QFamily):
        return {"family": "Q", "delta": _el(T, tag.delta), "gamma": _el(T, tag.gamma)}
    return {"family": "none", "reason": tag.reason}


def cmd_classify(T, args):
    P = _poly(T, args.poly)
    if P.degree != 3 or not P.is_monic():
        raise UsageError("classify expects a monic cubic")
    if not is_irreducible(P):
        return {"schema": SCHEMA, "q": T.q, "poly": str(P), "error": "reducible"}, 1
    tag = families.classify_cubic(P)
    rec = {"schema": SCHEMA, "q": T.q, "poly": str(P)}
    rec.update(_tag_record(T, tag))
    c1 = families.family_c1(T, tag)
    rec["condition1"] = c1
    return rec, 0


def _classes(T):
    cl = equiv.enumerate_classes(T, with_sizes=True)
    return cl


def cmd_classes(T, args):
    _guard(T, args)
    cl = _classes(T)
    rows = [{"rep_delta": _el(T, c.rep_delta), "size": c.size,
             "members": [_el(T, d) for d in c.p_deltas]} for c in cl]
    if args.plot:
        from .plotting import plot_classes
        plot_classes(T, cl, args.plot)
    return {"schema": SCHEMA, "q": T.q, "classes": rows}, 0


def cmd_counts(T, args):
    _guard(T, args)
    res = sweep.sweep_cubics(T, threads=args.threads)
    tally = sweep.family_tally(T, res.c1_cubics)
    exp = sweep.expected_counts(T.q)
    cl = equiv.enumerate_classes(T)
    obs = {"total": res.total, "P": tally.P, "Q": tally.Q, "B": tally.B,
           "P_delta_1": tally.P_delta_1, "classes": len(cl)}
    items = [{"item": k, "observed": obs[k], "expected": exp[k], "pass": obs[k] == exp[k]} for k in obs]
    allpass = all(i["pass"] for i in items)
    if args.plot:
        from .plotting import plot_counts
        plot_counts([(i["item"], i["observed"], i["expected"]) for i in items], T.q, args.plot)
    rec = {"schema": SCHEMA, "q": T.q, "items": items, "all_pass": allpass,
           "irreducible_cubics": res.n_irreducible}
    return rec, 0 if allpass else 1


def cmd_equiv(T, args):
    if len(args.polys) != 2:
        raise UsageError("equiv needs two polynomials")
    P, Q = (_poly(T, s) for s in args.polys)
    for X in (P, Q):
        if X.degree != 3 or not X.is_monic() or not is_irreducible(X):
            raise UsageError(f"{X} is not a monic irreducible cubic")
    w = equiv.are_equivalent(P, Q, projective=not args.frobenius)
    if w is None:
        return {"schema": SCHEMA, "q": T.q, "equivalent": False, "result": "inequivalent"}, 1
    return {"schema": SCHEMA, "q": T.q, "equivalent": True, "u": _el(T, w.u), "v": _el(T, w.v),
            "sigma": w.sigma, "lambda": _el(T, w.lam)}, 0


def cmd_verify_spread(T, args):
    _guard(T, args)
    P = _poly(T, args.poly)
    if P.degree != 3 or not is_irreducible(P):
        raise UsageError("verify-spread expects an irreducible cubic")
    S = spread.spread_from_poly(P, root_index=args.root)
    cert = spread.verify_spread(S)
    rec = {"schema": SCHEMA, "q": T.q, "valid": cert.valid, "lines": cert.n_lines,
           "group_order": S.group_order, "marks": cert.marks}
    if not cert.valid:
        rec["uncovered"] = cert.uncovered
        rec["doubly_covered"] = cert.doubly_covered
        rec["cover_count"] = cert.cover_count
    if args.export_lines:
        spread.export_lines(S, args.export_lines)
        rec["exported"] = args.export_lines
    return rec, 0 if cert.valid else 1


def cmd_families(T, args):
    _guard(T, args)
    cl = equiv.enumerate_classes(T)
    rec = {"schema": SCHEMA, "q": T.q,
           "pdelta1_c1": [_el(T, d) for c in cl for d in c.p_deltas],
           "b_family_possible": T.q % 3 == 1}
    if T.q % 3 == 2:
        rep = equiv.feng_lu_coverage(T, cl)
        rec["g3"] = {"count": rep.g_count, "classes_hit": rep.g_classes, "new_classes": rep.new_classes,
                     "n_classes": rep.n_classes, "bound": rep.bound, "within_bound": rep.within_bound}
    return rec, 0


def cmd_thresholds(T, args):
    q = cond.aubry_perret_threshold(args.degree, args.ideal_points)
    return {"schema": SCHEMA, "partial_degree": args.degree, "ideal_points": args.ideal_points,
            "threshold": q}, 0


HANDLERS = {
    "check": cmd_check, "classify": cmd_classify, "classes": cmd_classes, "counts": cmd_counts,
    "equiv": cmd_equiv, "verify-spread": cmd_verify_spread, "families": cmd_families,
    "thresholds": cmd_thresholds,
}


# -- output ------------------------------------------------------------------------


def _flat(rec, prefix=""):
    for k, v in rec.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flat(v, key + ".")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                yield from _flat(item, f"{key}.{i}.")
        elif isinstance(v, list):
            yield key, " ".join(str(x) for x in v)
        else:
            yield key, v


def render(rec, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec)
    if fmt == "text":
        if set(rec) == {"schema", "partial_degree", "ideal_points", "threshold"}:
            return str(rec["threshold"])
        return "\n".join(f"{k}: {json.dumps(v) if isinstance(v, (bool, type(None))) else v}"
                         for k, v in _flat(rec))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    tables = [k for k, v in rec.items() if isinstance(v, list) and v and isinstance(v[0], dict)]
    if tables:
        rows = rec[tables[0]]
        cols = list(rows[0])
        w.writerow(cols)
        for r in rows:
            w.writerow([" ".join(map(str, r[c])) if isinstance(r[c], list) else r[c] for c in cols])
    else:
        w.writerow(["key", "value"])
        for k, v in _flat(rec):
            w.writerow([k, v])
    return buf.getvalue().rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclicspreads",
                                 description="Cyclic 2-spreads of V(6,q): checks, classification, counts.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int)
    common.add_argument("--h", type=int, default=1)
    common.add_argument("--q", type=int, help="shorthand for a prime power q = p^h")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--allow-large", action="store_true", help=f"lift the q <= {Q_GUARD} guard")
    sub = ap.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("check", parents=[common], help="spread condition for one polynomial")
    s.add_argument("--poly", required=True)
    s.add_argument("--pp", action="store_true", help="also test x^m P(x^{q-1}) for the permutation property")
    s = sub.add_parser("classify", parents=[common], help="family of an irreducible cubic")
    s.add_argument("--poly", required=True)
    s = sub.add_parser("classes", parents=[common], help="equivalence classes of spread-condition cubics")
    s.add_argument("--plot", help="write a class figure to this path")
    s = sub.add_parser("counts", parents=[common], help="exhaustive counts vs closed forms")
    s.add_argument("--plot", help="write a count figure to this path")
    s = sub.add_parser("equiv", parents=[common], help="equivalence witness for two cubics")
    s.add_argument("polys", nargs="*")
    s.add_argument("--frobenius", action="store_true", help="allow the Frobenius twist")
    s = sub.add_parser("verify-spread", parents=[common], help="build and verify the spread of a cubic")
    s.add_argument("--poly", required=True)
    s.add_argument("--root", type=int, default=0, choices=(0, 1, 2))
    s.add_argument("--export-lines", help="CSV path: 12 integers per line")
    sub.add_parser("families", parents=[common], help="family and g_{3,rho} coverage report")
    s = sub.add_parser("thresholds", parents=[common], help="least q passing the curve bound")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--ideal-points", type=int, required=True)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = RunConfig(args.p or 0, args.h, args.verb, args.threads, args.fmt, args.out, args.seed)
    random.seed(cfg.seed)
    try:
        T = None if args.verb == "thresholds" else _tower(args)
        rec, code = HANDLERS[args.verb](T, args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (UsageError, FieldError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = render(rec, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
