"""Closed-form expansion of sqrt(D) for D = (X^2 + f)^2 + 4v(X - w).

Line h of the expansion is

    (Y + A + 2e_h) / (v_h (X - w_h)) = 2(X + w_h)/v_h - (Ybar + A + 2e_{h+1}) / (v_h (X - w_h))

with A = X^2 + f, and the data (v_h, w_h, e_h) obey

    f + e_h + e_{h+1} = -w_h^2
    v_h v_{h+1} = -4 e_{h+1}
    v / e_{h+1} = w_h + w_{h+1}
    e_h e_{h+1} = v (w - w_h)

The curve keeps u = v*w rather than w so that v = 0 stays representable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cfgeneral import QuadraticIrrational, QuadraticSurd, cf_step_general, conjugate_step_back
from .errors import (InvariantBroken, Mismatch, PointNotOnCurve, SingularStep,
                     TorsionDegenerate, ZeroNormalization, ZeroV)
from .field import QQ, format_scalar, scalar_to_json
from .poly import Poly


@dataclass(frozen=True)
class QuarticCurve:
    f: object
    v: object
    u: object
    field: object = QQ

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "f", F(self.f))
        object.__setattr__(self, "v", F(self.v))
        object.__setattr__(self, "u", F(self.u))
        if not self.v and not self.u:
            raise ValueError("v = u = 0 makes D a perfect square")

    @classmethod
    def from_fvw(cls, f, v, w, field=QQ):
        v, w = field(v), field(w)
        return cls(f, v, v * w, field)

    @property
    def w(self):
        if not self.v:
            raise ZeroV("w = u/v is undefined when v = 0")
        return self.u / self.v

    @property
    def f_plus_w2(self):
        return self.f + self.w * self.w

    @property
    def A(self):
        return Poly([self.f, 0, 1], self.field)

    @property
    def D(self):
        A = self.A
        return A * A + Poly([-4 * self.u, 4 * self.v], self.field)

    @property
    def is_singular(self):
        """True when D has a repeated root (the formulas still run)."""
        return self.D.has_repeated_root()

    def rhs(self, x):
        a = x * x + self.f
        return a * a + 4 * (self.v * x - self.u)

    def contains(self, x, y):
        return y * y == self.rhs(x)

    def irrational(self):
        return QuadraticIrrational(self.D)

    def to_json(self):
        return {"model": "quartic", "coeffs": {k: scalar_to_json(getattr(self, k)) for k in ("f", "v", "u")}}

    def __str__(self):
        return f"Y^2 = {self.D}"


@dataclass(frozen=True)
class QuarticCFState:
    """Data of line h: v_h, w_h, e_h and e_{h+1}."""

    h: int
    v: object
    w: object
    e: object
    e_next: object

    def to_json(self):
        return {"h": self.h, "v_h": scalar_to_json(self.v), "w_h": scalar_to_json(self.w),
                "e_h": scalar_to_json(self.e)}

    def P(self, c: QuarticCurve):
        return c.A + 2 * self.e

    def Q(self, c: QuarticCurve):
        return Poly([-self.v * self.w, self.v], c.field)

    def a(self, c: QuarticCurve):
        return Poly([2 * self.w / self.v, 2 / (self.v * c.field.one)], c.field)


def _require_v(c: QuarticCurve):
    if not c.v:
        raise ZeroV("the closed-form expansion needs v != 0; use the general engine")


def init_from_point(c: QuarticCurve, M, v0) -> QuarticCFState:
    """Line 0 translated by the point M = (x, y) on the quartic."""
    F = c.field
    x, y = F(M[0]), F(M[1])
    if not c.contains(x, y):
        raise PointNotOnCurve(f"({x}, {y}) is not on {c}")
    v0 = F(v0)
    if not v0:
        raise ZeroNormalization("v_0 must be nonzero")
    half = F.one / 2
    e0 = (y - c.f - x * x) * half
    e1 = (-y - c.f - x * x) * half
    s = QuarticCFState(0, v0, x, e0, e1)
    check_state(s, c)
    return s


def check_state(s: QuarticCFState, c: QuarticCurve):
    """Raise InvariantBroken unless the two one-line identities hold."""
    if c.f + s.e + s.e_next != -s.w * s.w:
        raise InvariantBroken(f"f + e_h + e_(h+1) != -w_h^2 at h={s.h}")
    if s.e * s.e_next != c.u - c.v * s.w:
        raise InvariantBroken(f"e_h e_(h+1) != u - v w_h at h={s.h}")


def step_forward(s: QuarticCFState, c: QuarticCurve) -> QuarticCFState:
    _require_v(c)
    e1 = s.e_next
    if not e1:
        raise SingularStep(s.h + 1)
    w1 = c.v / e1 - s.w
    v1 = -4 * e1 / s.v
    e2 = -c.f - w1 * w1 - e1
    if c.f + e1 + c.u / e1 != s.w * w1:
        raise InvariantBroken(f"X^0 identity fails at h={s.h}")
    nxt = QuarticCFState(s.h + 1, v1, w1, e1, e2)
    check_state(nxt, c)
    return nxt


def step_backward(s: QuarticCFState, c: QuarticCurve) -> QuarticCFState:
    _require_v(c)
    if not s.e:
        raise SingularStep(s.h - 1)
    w0 = c.v / s.e - s.w
    e0 = -c.f - w0 * w0 - s.e
    v0 = -4 * s.e / s.v
    prev = QuarticCFState(s.h - 1, v0, w0, e0, s.e)
    check_state(prev, c)
    return prev


def singular_start(c: QuarticCurve) -> QuarticCFState:
    """State at h = 1 of the expansion of Y + A: v_1 = 4v, w_1 = w, e_1 = 0."""
    _require_v(c)
    k = c.f_plus_w2
    if not k:
        raise TorsionDegenerate(3)
    return QuarticCFState(1, 4 * c.v, c.w, c.field.zero, -k)


def expand(c: QuarticCurve, start: QuarticCFState, forward: int, backward: int = 0,
           truncate: bool = False):
    """States start.h - backward .. start.h + forward.

    With ``truncate`` a singular step ends that direction quietly instead of
    raising.
    """
    fwd, cur = [start], start
    try:
        for _ in range(forward):
            cur = step_forward(cur, c)
            fwd.append(cur)
    except SingularStep:
        if not truncate:
            raise
    back, cur = [], start
    try:
        for _ in range(backward):
            cur = step_backward(cur, c)
            back.append(cur)
    except SingularStep:
        if not truncate:
            raise
    return back[::-1] + fwd


def e_values(states):
    """{h: e_h} covering every index touched by ``states`` (including e_{h+1})."""
    out = {}
    for s in states:
        out[s.h] = s.e
        out[s.h + 1] = s.e_next
    return out


@dataclass
class CrossCheckReport:
    steps: int
    matched: int
    first_mismatch: object = None

    @property
    def ok(self):
        return self.first_mismatch is None


def cross_check_general(c: QuarticCurve, start: QuarticCFState, n: int, backward: int = 0,
                        raise_on_mismatch=True) -> CrossCheckReport:
    """Run both engines on the same surd and compare P_h, Q_h, a_h line by line."""
    _require_v(c)
    Yq = c.irrational()
    surd = QuadraticSurd(Yq, start.P(c), start.Q(c))
    states = expand(c, start, n, backward, truncate=True)
    by_h = {s.h: s for s in states}
    gen = {}
    line = surd.first_line()
    line = type(line)(start.h, line.P, line.Q, line.a)
    gen[line.h] = line
    cur = line
    for _ in range(n):
        if cur.h + 1 not in by_h:
            break
        cur = cf_step_general(Yq, cur)
        gen[cur.h] = cur
    cur = line
    for _ in range(backward):
        if cur.h - 1 not in by_h:
            break
        cur = conjugate_step_back(Yq, cur)
        gen[cur.h] = cur
    matched = 0
    report = CrossCheckReport(len(gen), 0)
    for h in sorted(gen):
        g, s = gen[h], by_h[h]
        if (g.P, g.Q, g.a) != (s.P(c), s.Q(c), s.a(c)):
            report.first_mismatch = (h, g, s)
            if raise_on_mismatch:
                raise Mismatch(h, f"general {g.render()} vs quartic {s}")
            break
        matched += 1
    report.matched = matched
    return report


def random_instance(field, rng: random.Random, height=6, max_tries=1000):
    """A random curve (v != 0) through a random point, and a random v_0.

    The point (x, y) and f, v are drawn first; u is then solved for.
    """
    for _ in range(max_tries):
        f = field.random(rng, height)
        v = field.random(rng, height, nonzero=True)
        x = field.random(rng, height)
        y = field.random(rng, height)
        a = x * x + f
        u = v * x - (y * y - a * a) / 4
        c = QuarticCurve(f, v, u, field)
        if c.is_singular:
            continue
        v0 = field.random(rng, height, nonzero=True)
        return c, (x, y), v0
    raise RuntimeError("no nonsingular instance found")


# -- tableau-style text rendering --------------------------------------------

def _abs(x):
    return abs(x) if isinstance(x, Fraction) else x


def _fmt_linear(c, w):
    """c*(X - w) written with integer inner coefficients, e.g. 9(3X+10)/8."""
    if not isinstance(c, Fraction):
        return f"{format_scalar(c)}(X{_signed(-w)})"
    mw = Fraction(-w)
    p, q = mw.numerator, mw.denominator
    k = c / q
    inner = ("X" if q == 1 else f"{q}X") + (f"{p:+d}" if p else "")
    head = "" if k.numerator == 1 else ("-" if k.numerator == -1 else str(k.numerator))
    tail = "" if k.denominator == 1 else f"/{k.denominator}"
    return f"{head}({inner}){tail}"


def _signed(x):
    s = format_scalar(x)
    return s if s.startswith("-") else "+" + s


def _fmt_quotient(w, v):
    half = v / 2
    num = f"X{_signed(w)}" if w else "X"
    if half == 1:
        return num
    hs = format_scalar(half)
    return f"({num})/" + (f"({hs})" if "/" in hs or hs.startswith("-") else hs)


def _fmt_P(e):
    two_e = 2 * e
    if not two_e:
        return "A"
    return f"A{_signed(two_e)}"


def render_line(s: QuarticCFState, display=True):
    """One tableau line; ``display`` prints |v_h| over Q as the classical tableau does."""
    v = _abs(s.v) if display else s.v
    den = _fmt_linear(v, s.w)
    return (f"line {s.h}: (Y+{_fmt_P(s.e)})/{den} = {_fmt_quotient(s.w, v)}"
            f" - (Ybar+{_fmt_P(s.e_next)})/{den}")


def render_tableau(states, display=True):
    return "\n".join(render_line(s, display) for s in states)


def quartic_residual(c: QuarticCurve, e0, e1):
    """2vw e_h e_{h+1} - v^2(e_h + e_{h+1}) - e_h^2 e_{h+1}^2 - v^2(f + w^2); zero on every line."""
    v, u = c.v, c.u
    return 2 * u * e0 * e1 - v * v * (e0 + e1) - (e0 * e1) ** 2 - v * v * c.f - u * u


def e_identity_failures(c: QuarticCurve, e: dict):
    """Indices where the curve-only identities between consecutive e's fail.

    Checks, wherever the needed e's are present:
      e_{h-1} e_h^2 e_{h+1} = v^2 (e_h + f + w^2)
      e_{h-1} e_h^2 e_{h+1}^2 e_{h+2} = v^2 (v^2 + 2vw(f + w^2) - (f + w^2) e_h e_{h+1})
      the quartic residual of (e_h, e_{h+1}) vanishes
    Returns a list of (name, h).
    """
    v = c.v
    k = c.f + c.u * c.u / (v * v)
    bad = []
    for h in sorted(e):
        if h - 1 in e and h + 1 in e:
            if e[h - 1] * e[h] ** 2 * e[h + 1] != v * v * (e[h] + k):
                bad.append(("vital", h))
        if h - 1 in e and h + 2 in e:
            lhs = e[h - 1] * e[h] ** 2 * e[h + 1] ** 2 * e[h + 2]
            if lhs != v * v * (v * v + 2 * c.u * k - k * e[h] * e[h + 1]):
                bad.append(("odde", h))
        if h + 1 in e and quartic_residual(c, e[h], e[h + 1]):
            bad.append(("quartic", h))
    return bad
