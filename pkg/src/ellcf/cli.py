"""Command-line front end.

Every subcommand prints text by default, or JSON / CSV with --format.  Exit
status: 0 when every check passed, 1 when a check failed, 2 for bad input,
3 when the computation itself hit an obstruction (a vanishing e_h, a torsion
zero, an engine mismatch).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import cfgeneral as cg
from . import curves as cv
from .cfquartic import (QuarticCurve, cross_check_general, e_values, expand, init_from_point,
                        render_tableau, singular_start)
from .errors import (DivisionByZero, EllcfError, InvariantBroken, Mismatch, SingularStep,
                     TorsionDegenerate, TorsionTruncation)
from .field import GF, QQ, format_scalar
from .golden import run_golden
from .poly import Poly, parse_poly
from .sequences import (IndexedSequence, SomosRelation, eds_generate, integer_renormalize, reprise_solve,
                        sequence_from_e, somos_generate, torsion_detect, verify_relation, ward_checks)

DEFAULT_SEED = 20240601

# options whose values may start with '-' (negative numbers, ranges)
_VALUE_FLAGS = {"--curve", "--curve-w", "--point", "--v0", "--init", "--range", "--coeffs", "--k",
                "--add", "--mul", "--map", "--unmap", "--D", "--T", "--P", "--Q", "--scale"}


class CheckFailed(Exception):
    pass


def _glue_negative_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def parse_field(text):
    if text.upper() in ("Q", "QQ"):
        return QQ
    return GF(int(text))


def parse_list(text, field):
    return [field(Fraction(t.strip())) for t in text.split(",") if t.strip()]


def parse_range(text):
    lo, hi = text.split("..")
    return int(lo), int(hi)


def curve_from_args(args, field):
    if args.curve:
        f, v, u = parse_list(args.curve, field)
        return QuarticCurve(f, v, u, field)
    if args.curve_w:
        f, v, w = parse_list(args.curve_w, field)
        return QuarticCurve.from_fvw(f, v, w, field)
    return None


def _add_curve_args(p):
    p.add_argument("--curve", help="quartic data f,v,u (u = v*w), e.g. -29,-48,240")
    p.add_argument("--curve-w", help="quartic data f,v,w instead of f,v,u")


def _emit_rows(rows, header, fmt, out):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        for r in rows:
            out.write("  ".join(str(x) for x in r) + "\n")


def _fmt(x):
    return format_scalar(x)


def _emit_sequence(seq, fmt, out, relation=None, extra=None):
    if fmt == "json":
        d = seq.to_json(relation)
        if extra:
            d.update(extra)
        json.dump(d, out)
        out.write("\n")
    elif fmt == "csv":
        out.write(seq.to_csv())
    else:
        for h, x in seq.items():
            out.write(f"{h}: {_fmt(x)}\n")
        for k, v in (extra or {}).items():
            out.write(f"{k}: {v}\n")


# -- subcommands -------------------------------------------------------------

def cmd_expand(args, field, out):
    back = args.steps if args.back is None else args.back
    c = None if args.general else curve_from_args(args, field)
    if c is not None and not c.v:
        print("notice: v = 0, routing to the general engine", file=sys.stderr)
    if c is not None and c.v:
        if args.point:
            start = init_from_point(c, parse_list(args.point, field), field(Fraction(args.v0)))
        else:
            start, back = singular_start(c), 0
        # over a finite field the start point has finite order, so a singular
        # step is expected; stop there instead of failing
        finite = field.characteristic != 0
        states = expand(c, start, args.steps, back, truncate=finite)
        shown = len(states) - 1
        if shown < args.steps + back:
            print(f"notice: singular step, showing {shown + 1} of {args.steps + back + 1} lines",
                  file=sys.stderr)
        report = cross_check_general(c, start, args.steps, back)
        if args.format == "json":
            json.dump({"curve": c.to_json(), "states": [s.to_json() for s in states],
                       "cross_check": report.ok}, out)
            out.write("\n")
        elif args.format == "csv":
            _emit_rows([(s.h, _fmt(s.v), _fmt(s.w), _fmt(s.e)) for s in states],
                       ["h", "v_h", "w_h", "e_h"], "csv", out)
        else:
            out.write(f"{c}\n")
            out.write(render_tableau(states, display=not args.raw) + "\n")
            out.write(f"general engine agreement: {report.matched}/{report.steps} lines\n")
        return
    # general engine
    if c is not None:
        D, T = c.D, None
        if args.point:
            x, y = parse_list(args.point, field)
            c_pt = init_from_point(c, (x, y), field(Fraction(args.v0)))
            P, Q = c_pt.P(c), c_pt.Q(c)
        else:
            P, Q = c.A, Poly.const(2, field)
    else:
        if not args.D:
            raise ValueError("give --curve, --curve-w or --general --D")
        D = parse_poly(args.D, field)
        T = parse_poly(args.T, field) if args.T else None
        P = parse_poly(args.P, field) if args.P else Poly([], field)
        Q = parse_poly(args.Q, field) if args.Q else Poly.const(1, field)
    Y = cg.QuadraticIrrational(D, T)
    surd = cg.QuadraticSurd(Y, P, Q)
    if back and not cg.is_reduced(Y, P, Q):
        if args.back:
            raise ValueError("conjugate lines need a reduced start")
        back = 0
    lines = cg.expand(surd, args.steps + 1, back)
    fwd = [ln for ln in lines if ln.h >= 0]
    states = cg.convergents([ln.a for ln in fwd], field)
    norms = []
    for h in range(args.steps + 1):
        lhs, rhs = cg.norm_identity(surd, states[h], fwd[h + 1].Q)
        norms.append(lhs == rhs)
    shown = [ln for ln in lines if ln.h <= args.steps]
    if args.format == "json":
        json.dump({"D": D.to_json(), "lines": cg.tableau_json(shown), "norm_ok": norms}, out)
        out.write("\n")
    elif args.format == "csv":
        _emit_rows([(ln.h, str(ln.P), str(ln.Q), str(ln.a)) for ln in shown], ["h", "P", "Q", "a"], "csv", out)
    else:
        out.write(f"Y^2 = {'(' + str(T) + ')Y + ' if T is not None else ''}{D}\n")
        for ln in shown:
            tag = f"  [norm {'ok' if norms[ln.h] else 'FAIL'}]" if ln.h >= 0 else ""
            out.write(ln.render() + tag + "\n")
    if not all(norms):
        raise CheckFailed("norm identity failed")


def cmd_somos(args, field, out):
    kappa, lam = parse_list(args.coeffs, field)
    rel = SomosRelation(args.rel, kappa, lam)
    init = parse_list(args.init, field) if args.init else [field.one] * args.rel
    lo, hi = parse_range(args.range)
    seq = somos_generate(rel, init, start=args.start, lo=lo, hi=hi)
    _emit_sequence(seq, args.format, out, relation=rel)


def cmd_eds(args, field, out):
    c = curve_from_args(args, field)
    W = eds_generate(c, args.hmax)
    rep = ward_checks(W, min(6, max(2, args.hmax // 2)))
    _emit_sequence(W, args.format, out, extra={"torsion": W.torsion, "ward_ok": rep.ok})
    if not rep.ok:
        raise CheckFailed(f"Ward identities fail: {rep.failures[:3]}")


def _load_seq(path):
    with open(path) as fh:
        return IndexedSequence.from_json(json.load(fh))


def cmd_verify(args, field, out):
    seq = _load_seq(args.seq)
    kappa, lam = parse_list(args.coeffs, field)
    rel = SomosRelation(args.rel, kappa, lam)
    lo, hi = parse_range(args.range) if args.range else (seq.lo, seq.hi)
    res = verify_relation(seq, rel, lo, hi)
    if args.format == "json":
        json.dump({"relation": rel.to_json(), "ok": res.ok, "first_failure": res.first_failure,
                   "checked": len(res.checked), "skipped": len(res.skipped)}, out)
        out.write("\n")
    else:
        status = "pass" if res.ok else f"FAIL at h={res.first_failure}"
        out.write(f"{rel}: {status} ({len(res.checked)} indices checked, {len(res.skipped)} skipped)\n")
    if not res.ok:
        raise CheckFailed("relation fails")


def cmd_torsion(args, field, out):
    c = curve_from_args(args, field)
    t = torsion_detect(c, args.budget)
    d = {"m": t.m, "quasi_period": t.quasi_period, "period": t.period,
         "consistent": t.consistent, "period_rule_ok": t.period_rule_ok}
    if args.format == "json":
        json.dump(d, out)
        out.write("\n")
    elif t.m is None and t.quasi_period is None:
        out.write(f"no torsion found within {args.budget} steps\n")
    else:
        out.write(f"torsion order m = {t.m}, quasi-period r = {t.quasi_period}, period = {t.period}\n")
        out.write(f"r = m - 1: {t.consistent}; period rule: {t.period_rule_ok}\n")
    if not (t.consistent and t.period_rule_ok):
        raise CheckFailed("EDS and continued fraction disagree")


def cmd_curve(args, field, out):
    c = curve_from_args(args, field)
    E = cv.WeierstrassCurve.from_quartic(c)
    results = {"quartic": str(c), "weierstrass": str(E), "discriminant": _fmt(E.discriminant)}
    if args.map:
        results["map"] = str(cv.quartic_to_weierstrass(c, parse_list(args.map, field)))
    if args.unmap:
        results["unmap"] = str(cv.weierstrass_to_quartic(c, parse_list(args.unmap, field)))
    if args.add:
        pts = parse_list(args.add, field)
        results["add"] = str(E.add(pts[:2], pts[2:4]))
    if args.mul:
        vals = args.mul.split(",")
        results["mul"] = str(E.mul(int(vals[0]), parse_list(",".join(vals[1:]), field)))
    if args.transform:
        t = cv.model_transform(c, args.transform)
        results["transform"] = str(t.target)
    if args.point:
        rep = cv.verify_adams_razar(c, init_from_point(c, parse_list(args.point, field),
                                                        field(Fraction(args.v0))), args.steps)
        results["M"] = str(rep.M)
        results["lines_checked"] = len(rep.checked)
    if args.format == "json":
        json.dump(results, out)
        out.write("\n")
    else:
        for k, v in results.items():
            out.write(f"{k}: {v}\n")


def cmd_reprise(args, field, out):
    r = reprise_solve(Fraction(args.k), field)
    c = r.curve
    d = {"k": _fmt(r.k), "v": _fmt(c.v), "f": _fmt(c.f), "w": _fmt(c.w), "w0": _fmt(r.start.w),
         "e0": _fmt(r.start.e), "e1": _fmt(r.start.e_next), "c0": _fmt(r.c[0]), "c1": _fmt(r.c[1])}
    if args.format == "json":
        json.dump(d, out)
        out.write("\n")
    else:
        out.write(" ".join(f"{k}={v}" for k, v in d.items()) + "\n")
        if args.steps:
            out.write(render_tableau(expand(c, r.start, args.steps, args.steps)) + "\n")


def cmd_renormalize(args, field, out):
    if args.seq:
        A = _load_seq(args.seq)
    else:
        c = curve_from_args(args, field)
        if c is None or not args.point:
            raise ValueError("give --seq, or --curve with --point")
        start = init_from_point(c, parse_list(args.point, field), field(Fraction(args.v0)))
        scale = field(Fraction(args.scale))
        e = {h: x * scale for h, x in e_values(expand(c, start, args.steps, args.steps)).items()}
        A = sequence_from_e(e, field.one, field.one)
    kappa, lam = parse_list(args.coeffs, field)
    r = integer_renormalize(A, SomosRelation(args.rel, kappa, lam))
    extra = {"source_relation": str(r.source), "c0": _fmt(r.c.get(0)), "c1": _fmt(r.c.get(1))}
    _emit_sequence(r.B, args.format, out, relation=r.target, extra=extra)


def cmd_examples(args, field, out):
    res = run_golden()
    if args.format == "json":
        json.dump([{"name": n, "ok": ok, "detail": d} for n, ok, d in res], out)
        out.write("\n")
    else:
        for name, ok, detail in res:
            out.write(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}\n")
    if all(ok for _, ok, _ in res):
        if args.format != "json":
            out.write("ALL GOLDEN CHECKS PASS\n")
    else:
        if args.format != "json":
            out.write("SOME GOLDEN CHECKS FAILED\n")
        raise CheckFailed("golden checks failed")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ellcf",
        description="Continued fractions of quartic square roots, elliptic curves and Somos sequences.")
    ap.add_argument("--field", default="Q", help="Q (default) or a prime p >= 5")
    ap.add_argument("--format", choices=["text", "json", "csv"], default="text")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized sweeps")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("expand", help="continued fraction tableau")
    _add_curve_args(p)
    p.add_argument("--point", help="x,y on the quartic")
    p.add_argument("--v0", default="1", help="normalization v_0 (default 1)")
    p.add_argument("--steps", type=int, default=5)
    p.add_argument("--back", type=int, default=None, help="conjugate lines (default: --steps)")
    p.add_argument("--raw", action="store_true", help="print signed v_h instead of |v_h|")
    p.add_argument("--general", action="store_true", help="use the general engine")
    p.add_argument("--D", help="radicand for --general, e.g. 'X^4-6X^2+4X+1'")
    p.add_argument("--T", help="optional linear term: Y^2 = T Y + D")
    p.add_argument("--P", help="start (Y + P)/Q; default P = 0")
    p.add_argument("--Q", help="default Q = 1")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("somos", help="generate a Somos sequence")
    p.add_argument("--rel", type=int, required=True, help="gap, e.g. 4 or 5")
    p.add_argument("--coeffs", default="1,1", help="kappa,lambda")
    p.add_argument("--init", help="gap initial values (default all ones)")
    p.add_argument("--start", type=int, default=0, help="index of the first initial value")
    p.add_argument("--range", default="-10..10", help="lo..hi")
    p.set_defaults(func=cmd_somos)

    p = sub.add_parser("eds", help="elliptic divisibility sequence of a curve")
    _add_curve_args(p)
    p.add_argument("--hmax", type=int, default=12)
    p.set_defaults(func=cmd_eds)

    p = sub.add_parser("verify", help="check a Somos relation on a sequence file")
    p.add_argument("--rel", type=int, required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--seq", required=True, help="sequence JSON as written by 'somos --format json'")
    p.add_argument("--range", help="lo..hi (default: whole window)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("torsion", help="torsion order from the EDS and the expansion")
    _add_curve_args(p)
    p.add_argument("--budget", type=int, default=40)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("curve", help="models, maps and the group law")
    _add_curve_args(p)
    p.add_argument("--map", help="x,y on the quartic to the cubic")
    p.add_argument("--unmap", help="U,V on the cubic to the quartic")
    p.add_argument("--add", help="U1,V1,U2,V2 on the cubic")
    p.add_argument("--mul", help="n,U,V on the cubic")
    p.add_argument("--transform", choices=["half_shift", "quarter_scale"])
    p.add_argument("--point", help="x,y: check line points against M + hS")
    p.add_argument("--v0", default="1")
    p.add_argument("--steps", type=int, default=20)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("reprise", help="the k-family with normalized e-stream 1, 1, 2, ...")
    p.add_argument("--k", required=True)
    p.add_argument("--steps", type=int, default=0, help="also print this many tableau lines")
    p.set_defaults(func=cmd_reprise)

    p = sub.add_parser("renormalize", help="remove constant factors from a Somos sequence")
    p.add_argument("--seq", help="sequence JSON")
    _add_curve_args(p)
    p.add_argument("--point")
    p.add_argument("--v0", default="1")
    p.add_argument("--scale", default="1", help="multiply the e-stream by this first")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--rel", type=int, default=5)
    p.add_argument("--coeffs", default="1,1", help="target kappa,lambda")
    p.set_defaults(func=cmd_renormalize)

    p = sub.add_parser("examples", help="reproduce the worked examples")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    # long expansions over Q print integers with tens of thousands of digits
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    try:
        field = parse_field(args.field)
        args.func(args, field, out)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (SingularStep, TorsionDegenerate, TorsionTruncation, Mismatch, InvariantBroken,
            DivisionByZero) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (EllcfError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


def main_entry():
    sys.exit(main())
