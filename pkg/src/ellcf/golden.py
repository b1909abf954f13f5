"""Worked examples reproduced exactly; used by the ``examples`` subcommand."""

from __future__ import annotations

from fractions import Fraction as Fr

from . import cfgeneral as cg
from .cfquartic import QuarticCurve, e_values, expand, init_from_point, singular_start
from .curves import Affine, WeierstrassCurve, verify_adams_razar
from .field import QQ
from .poly import parse_poly
from .sequences import (SomosRelation, curve_to_somos_coefficients, eds_generate, integer_renormalize,
                        products_divisible, reprise_solve, sequence_from_e, somos_generate,
                        shipsey_denominator_check, torsion_detect, verify_relation, ward_checks)

CHECKS = []


def check(name):
    def deco(fn):
        CHECKS.append((name, fn))
        return fn
    return deco


def _ones(n):
    return [Fr(1)] * n


CURVE_41 = dict(f=-29, v=-48, u=240)
CURVE_42 = dict(f=-3, v=1, u=2)


def expansion_41(forward=6, backward=6):
    c = QuarticCurve(**CURVE_41)
    return c, expand(c, init_from_point(c, (-3, -4), 8), forward, backward)


@check("tableau of the (-29, -48, 240) curve")
def _tableau():
    c, st = expansion_41(3, 3)
    by = {s.h: s for s in st}
    ok = [by[h].e for h in range(4)] == [8, 12, 16, 9]
    ok &= [by[h].w for h in range(4)] == [-3, -1, -2, Fr(-10, 3)]
    ok &= [abs(by[h].v) for h in range(4)] == [8, 6, Fr(32, 3), Fr(27, 8)]
    e = e_values(st)
    ok &= [e[h] / 4 for h in range(-3, 4)] == [Fr(9, 4), 4, 3, 2, 3, 4, Fr(9, 4)]
    return ok, "e = 8, 12, 16, 9; w = -3, -1, -2, -10/3"


@check("A and B sequences of the (-29, -48, 240) curve")
def _sequences_41():
    c, st = expansion_41(10, 10)
    e = {h: x / 4 for h, x in e_values(st).items()}
    A = sequence_from_e(e, Fr(1), Fr(1))
    ok = (A[2], A[3], A[4]) == (3, 36, 972)
    r = integer_renormalize(A, SomosRelation(5, 1, 1))
    ok &= r.B.window(-4, 8) == [3, 2, 1, 1, 1, 1, 1, 2, 3, 5, 11, 37, 83]
    ok &= not products_divisible(A, -2, 3, 6 ** 3, range(-8, 9))
    ok &= not products_divisible(A, -1, 2, 6, range(-8, 9))
    return ok, f"source relation {r.source}, c_0, c_1 = {r.c[0]}, {r.c[1]}"


@check("e-list and C-sequence of the (-3, 1, 2) curve")
def _sequences_42():
    c = QuarticCurve(**CURVE_42)
    st = expand(c, init_from_point(c, (1, 0), 1), 12, 12)
    e = e_values(st)
    ok = [e[h] for h in range(-1, 5)] == [2, 1, 1, 2, Fr(3, 4), Fr(14, 9)]
    C = sequence_from_e(e, Fr(1), Fr(1))
    ok &= C.window(-2, 7) == [2, 1, 1, 1, 1, 2, 3, 7, 23, 59]
    ok &= verify_relation(C, SomosRelation(4, 1, 1), -10, 10).ok
    return ok, "C = 2, 1, 1, 1, 1, 2, 3, 7, 23, 59"


@check("higher relations of Somos(4)")
def _higher():
    C = somos_generate(SomosRelation(4, 1, 1), _ones(4), lo=-16, hi=16)
    rels = [SomosRelation(5, -1, 5), SomosRelation(6, 1, 5), SomosRelation(8, 25, -4)]
    ok = all(verify_relation(C, r, -10, 10).ok for r in rels)
    coeffs = curve_to_somos_coefficients(QuarticCurve(**CURVE_42))
    ok &= [coeffs[g] for g in (4, 5, 6, 8)] == [SomosRelation(4, 1, 1)] + rels
    return ok, ", ".join(str(r) for r in rels)


@check("group law and continued fraction points agree")
def _adams_razar():
    c = QuarticCurve(**CURVE_41)
    r1 = verify_adams_razar(c, init_from_point(c, (-3, -4), 8), 20)
    E = WeierstrassCurve.from_quartic(c)
    M, S = Affine(-8, -24), Affine(0, 0)
    ok = r1.M == M and len(r1.checked) == 41
    ok &= E.add(M, E.mul(2, S)) == Affine(-16, -32) and E.sub(M, E.mul(2, S)) == Affine(-16, -16)
    c2 = QuarticCurve(**CURVE_42)
    r2 = verify_adams_razar(c2, init_from_point(c2, (1, 0), 1), 20)
    ok &= r2.M == Affine(-1, 1) and len(r2.checked) == 41
    return ok, "41 lines on each curve"


@check("elliptic divisibility sequence of the (-3, 1, 2) curve")
def _eds():
    c = QuarticCurve(**CURVE_42)
    W = eds_generate(c, 16)
    ok = W.window(1, 5) == [1, 1, -1, -5, -4]
    ok &= ward_checks(W, 6, [(8, 5, 2), (7, 4, 3), (6, 3, 1)]).ok
    ok &= shipsey_denominator_check(c, 15).ok
    c41 = QuarticCurve(**CURVE_41)
    st = expand(c41, singular_start(c41), 3)
    ok &= [s.e for s in st][1:] == [4, -24, -28]
    return ok, "W_1..W_5 = 1, 1, -1, -5, -4"


@check("torsion of orders 3 and 4")
def _torsion():
    t3 = torsion_detect(QuarticCurve.from_fvw(-1, 1, 1))
    t4 = torsion_detect(QuarticCurve.from_fvw(0, -2, 1))
    ok = (t3.m, t3.quasi_period) == (3, 2) and (t4.m, t4.quasi_period) == (4, 3)
    ok &= t3.period_rule_ok and t4.period_rule_ok
    return ok, f"periods {t3.period} and {t4.period}"


@check("reprise with k = -2")
def _reprise():
    r = reprise_solve(-2)
    c = r.curve
    ok = (c.v, c.f, c.w, r.start.w) == (-48, -29, -5, -3)
    c41, st = expansion_41(3, 3)
    ok &= c == c41 and expand(c, r.start, 3, 3) == st
    return ok, "(v, f, w, w_0) = (-48, -29, -5, -3)"


@check("general engine on X^4 - 6X^2 + 4X + 1")
def _general():
    Y = cg.QuadraticIrrational(parse_poly("X^4 - 6X^2 + 4X + 1"))
    surd = cg.QuadraticSurd(Y, 0, 1)
    lines = cg.expand(surd, 11)
    states = cg.convergents([ln.a for ln in lines], QQ)
    pairs = [cg.norm_identity(surd, states[h], lines[h + 1].Q) for h in range(11)]
    ok = all(lhs == rhs for lhs, rhs in pairs)
    ok &= [cg.distance(surd, h) for h in range(4)] == [1, 2, 3, 4]
    return ok, "norm identity for h <= 10"


def run_golden():
    """[(name, ok, detail)] for every registered check; errors count as failures."""
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is reported as a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
