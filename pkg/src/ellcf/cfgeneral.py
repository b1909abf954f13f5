"""Continued fraction expansion of quadratic irrationals over F(X).

Y is a root of Y^2 = T Y + D taken in F((1/X)); complete quotients are
(Y + P_h)/Q_h and partial quotients a_h their polynomial parts.  Besides the
forward and conjugate (backward) steps this module provides continuants,
the norm and distance identities, period/quasi-period detection, unit
extraction, the Schmidt multiplication rule and symmetry detection.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import (InvariantBroken, NoPeriodFound, PerfectSquare,
                     PrecisionExhausted)
from .poly import LaurentSeries, Poly, laurent_sqrt

MAX_PRECISION = 4096


class QuadraticIrrational:
    """The root Y of Y^2 = T*Y + D whose leading coefficient is the chosen
    square root of lc(T^2 + 4D), normalized so that deg D >= 2 deg T + 2."""

    def __init__(self, D: Poly, T: Optional[Poly] = None):
        self.field = D.field
        self.D = D
        self.T = T if T is not None else Poly([], D.field)
        if self.D.degree < 2 * max(self.T.degree, 0) + 2 or self.D.degree % 2:
            raise ValueError("need even deg D >= 2 deg T + 2")
        self.genus = self.D.degree // 2 - 1
        self.disc = self.T * self.T + self.D.scale(4)
        self._series = None
        self.Yp = self.series(self.genus + 4).poly_part()
        if self.Yp * self.Yp - self.T * self.Yp - self.D == Poly([], self.field):
            raise PerfectSquare(f"Y^2 = T*Y + D has the polynomial root {self.Yp}")
        # repeated roots are allowed; the formulas do not care
        self.degenerate = self.disc.has_repeated_root()

    def series(self, prec):
        """Y to ``prec`` terms of relative precision (cached, grows on demand)."""
        if self._series is None or self._series.precision < prec:
            root = laurent_sqrt(self.disc, prec)
            half = self.field.one / 2
            s = (root + self.T) * half
            self._series = s
        return self._series.truncate(prec)

    def conj_series(self, prec):
        return self.T - self.series(prec)

    def norm(self, a: Poly, b: Poly):
        """N(a - b*Y) = (a - bY)(a - b*conj(Y)) = a^2 - a b T - b^2 D."""
        return a * a - a * b * self.T - b * b * self.D

    def state_bound(self):
        """Crude count of possible (P, Q) pairs; finite only over F_p."""
        p = self.field.characteristic
        if p == 0:
            return None
        return p ** (2 * self.genus + 1)

    def __repr__(self):
        return f"QuadraticIrrational(D={self.D}, T={self.T})"


def _certified_degree(make_series, start=16):
    prec = start
    while prec <= MAX_PRECISION:
        s = make_series(prec)
        if not s.is_zero_to_precision():
            return s.degree
        prec *= 2
    raise PrecisionExhausted(f"degree not certified within {MAX_PRECISION} terms")


@dataclass(frozen=True)
class GeneralCFLine:
    """Line h: (Y + P)/Q = a - (conj(Y) + P_{h+1})/Q."""

    h: int
    P: Poly
    Q: Poly
    a: Poly

    def to_json(self):
        return {"h": self.h, "P": self.P.to_json(), "Q": self.Q.to_json(), "a": self.a.to_json()}

    def render(self):
        return f"line {self.h}: (Y + {self.P})/({self.Q}) = {self.a} - (Ybar + P_{self.h + 1})/({self.Q})"


class QuadraticSurd:
    """(Y + P)/Q with Q dividing the norm P^2 + T P - D."""

    def __init__(self, Y: QuadraticIrrational, P, Q):
        F = Y.field
        self.Y = Y
        self.P = P if isinstance(P, Poly) else Poly([P], F)
        self.Q = Q if isinstance(Q, Poly) else Poly([Q], F)
        if self.Q.is_zero():
            raise ValueError("Q must be nonzero")
        if not (self.norm() % self.Q).is_zero():
            raise ValueError(f"Q = {self.Q} does not divide the norm {self.norm()}")

    def norm(self):
        return self.P * self.P + self.Y.T * self.P - self.Y.D

    def first_line(self):
        return make_line(self.Y, 0, self.P, self.Q)


def make_line(Y: QuadraticIrrational, h, P: Poly, Q: Poly) -> GeneralCFLine:
    # (Y + P)/Q = (Yp + P)/Q + (Y - Yp)/Q and the last term has negative degree
    a = (Y.Yp + P) // Q
    return GeneralCFLine(h, P, Q, a)


def is_reduced(Y: QuadraticIrrational, P: Poly, Q: Poly) -> bool:
    """deg (Y+P)/Q > 0 and deg (conj(Y)+P)/Q < 0, decided from series degrees."""
    dq = Q.degree
    d1 = _certified_degree(lambda n: Y.series(n) + P)
    d2 = _certified_degree(lambda n: Y.conj_series(n) + P)
    return d1 - dq > 0 and d2 - dq < 0


def cf_step_general(Y: QuadraticIrrational, line: GeneralCFLine) -> GeneralCFLine:
    P_next = line.a * line.Q - line.P - Y.T
    Q_next = -(P_next * P_next + Y.T * P_next - Y.D).exact_div(line.Q)
    return make_line(Y, line.h + 1, P_next, Q_next)


def conjugate_step_back(Y: QuadraticIrrational, line: GeneralCFLine) -> GeneralCFLine:
    """Line h-1 from line h via the conjugate expansion B_{h-1} = (Y + P_h)/Q_{h-1}."""
    Q_prev = -(line.P * line.P + Y.T * line.P - Y.D).exact_div(line.Q)
    a_prev = (Y.Yp + line.P) // Q_prev
    P_prev = a_prev * Q_prev - line.P - Y.T
    prev = make_line(Y, line.h - 1, P_prev, Q_prev)
    if prev.a != a_prev:
        raise InvariantBroken(f"conjugate partial quotient {a_prev} differs from {prev.a}")
    return prev


def expand(surd: QuadraticSurd, forward: int, backward: int = 0):
    """Lines -backward .. forward of the two-sided tableau.

    Conjugate (negative) lines need a reduced start.
    """
    Y = surd.Y
    if backward and not is_reduced(Y, surd.P, surd.Q):
        raise ValueError("backward expansion needs a reduced start")
    line0 = surd.first_line()
    lines = [line0]
    cur = line0
    for _ in range(forward):
        cur = cf_step_general(Y, cur)
        lines.append(cur)
    cur = line0
    back = []
    for _ in range(backward):
        cur = conjugate_step_back(Y, cur)
        back.append(cur)
    return back[::-1] + lines


def tableau_json(lines):
    return [ln.to_json() for ln in lines]


def tableau_text(lines):
    return "\n".join(ln.render() for ln in lines)


@dataclass(frozen=True)
class ConvergentState:
    """Columns of a_0-matrix * ... * a_h-matrix = [[x_h, x_{h-1}], [y_h, y_{h-1}]]."""

    h: int
    x: Poly
    x_prev: Poly
    y: Poly
    y_prev: Poly

    @classmethod
    def initial(cls, field):
        one, zero = Poly([1], field), Poly([], field)
        return cls(-1, one, zero, zero, one)

    def determinant(self):
        return self.x * self.y_prev - self.x_prev * self.y


def convergents_advance(state: ConvergentState, a: Poly) -> ConvergentState:
    return ConvergentState(state.h + 1, a * state.x + state.x_prev, state.x,
                           a * state.y + state.y_prev, state.y)


def convergents(quotients, field):
    st = ConvergentState.initial(field)
    out = []
    for a in quotients:
        st = convergents_advance(st, a)
        out.append(st)
    return out


def norm_identity(surd: QuadraticSurd, state: ConvergentState, Q_next: Poly):
    """Both sides of N(Q0 x_h - P0 y_h - y_h Y) = (-1)^(h+1) Q0 Q_{h+1}.

    With P0 = 0 and Q0 = 1 this is the familiar (x - yY)(x - y conj Y) = (-1)^(h+1) Q_{h+1}.
    """
    a = surd.Q * state.x - surd.P * state.y
    lhs = surd.Y.norm(a, state.y)
    sign = 1 if (state.h + 1) % 2 == 0 else -1
    rhs = (surd.Q * Q_next).scale(sign)
    return lhs, rhs


def distance(surd: QuadraticSurd, h: int) -> int:
    """deg y_{h+1}, checked against -deg(x_h - y_h Y_0) computed as a series."""
    lines = expand(surd, h + 1)
    states = convergents([ln.a for ln in lines], surd.Y.field)
    st, nxt = states[h], states[h + 1]
    by_continuant = nxt.y.degree
    a = surd.Q * st.x - surd.P * st.y

    def series(n):
        return (LaurentSeries.from_poly(a, a.degree - n) - surd.Y.series(n) * st.y) / surd.Q

    by_series = -_certified_degree(series, start=max(16, 2 * (st.x.degree + 2)))
    if by_continuant != by_series:
        raise InvariantBroken(f"distance mismatch: deg y = {by_continuant}, series gives {by_series}")
    return by_continuant


@dataclass
class PeriodInfo:
    """Outcome of a periodicity scan.

    ``quasi_period`` is the least r with (P_{i+r}, Q_{i+r}) = (P_i, kappa Q_i);
    ``period`` the least exact repeat (a multiple of r), or None if the
    budget ran out before the accumulated twist returned to 1.
    """

    offset: int
    quasi_period: int
    kappa: object
    period: Optional[int]
    lines: list = dc_field(repr=False, default_factory=list)


def detect_periodicity(surd: QuadraticSurd, max_steps: int) -> Optional[PeriodInfo]:
    """Scan up to ``max_steps`` lines; None means aperiodic so far."""
    Y = surd.Y
    seen = {}
    lines = []
    cur = surd.first_line()
    for j in range(max_steps + 1):
        lines.append(cur)
        key = (cur.P, cur.Q.monic())
        if key in seen:
            i = seen[key]
            r = j - i
            kappa = cur.Q.lc() / lines[i].Q.lc()
            period = r if kappa == 1 else None
            # the twist accumulates; look for an exact repeat within a second budget
            k, probe, extra = 1, cur, 0
            while period is None and extra + r <= max_steps:
                for _ in range(r):
                    probe = cf_step_general(Y, probe)
                    lines.append(probe)
                extra += r
                k += 1
                if probe.P == lines[i].P and probe.Q == lines[i].Q:
                    period = k * r
            return PeriodInfo(i, r, kappa, period, lines)
        seen[key] = j
        if j < max_steps:
            cur = cf_step_general(Y, cur)
    return None


def unit_from_period(surd: QuadraticSurd, info: Optional[PeriodInfo]):
    """Unit x - yY of F[X, Y] read off the convergent before a constant Q_r.

    Returns (x, y, kappa, m): (x - yY)(x - y conj Y) = (-1)^r kappa with
    kappa = Q_r/Q_0, and m = deg(x - y conj Y), the pole order at infinity.
    """
    if info is None:
        raise NoPeriodFound("no period detected")
    if info.offset != 0 or not surd.Q.is_constant():
        raise NoPeriodFound("unit extraction needs a purely periodic start with constant Q_0")
    lines = info.lines
    r = next((j for j in range(1, len(lines)) if lines[j].Q.is_constant()), None)
    if r is None:
        raise NoPeriodFound("no constant Q_r within the detected period")
    st = convergents([ln.a for ln in lines[:r]], surd.Y.field)[-1]
    q0 = surd.Q.lc()
    inv = surd.Y.field.one / q0
    x = st.x - surd.P.scale(inv) * st.y
    y = st.y.scale(inv)
    kappa = lines[r].Q.lc() / q0
    n = surd.Y.norm(x, y)
    sign = 1 if r % 2 == 0 else -1
    if n != Poly([sign * kappa], surd.Y.field):
        raise InvariantBroken(f"unit norm {n} != {sign} * {kappa}")
    m = st.x.degree
    return x, y, kappa, m


def evaluate_cf(quotients, field):
    """Exact value [a_0; a_1, ..., a_n] as a (numerator, denominator) pair."""
    st = convergents(quotients, field)[-1]
    return st.x, st.y


def schmidt_scale(quotients, B, C):
    """The two streams (C a0, B a1, C a2, ...) and (B a0, C a1, B a2, ...)."""
    left = [a.scale(C if i % 2 == 0 else B) for i, a in enumerate(quotients)]
    right = [a.scale(B if i % 2 == 0 else C) for i, a in enumerate(quotients)]
    return left, right


def check_schmidt(quotients, B, C, precision=32):
    """B [C a0; B a1, ...] = C [B a0; C a1, ...], exactly and as Laurent series."""
    F = quotients[0].field
    left, right = schmidt_scale(quotients, B, C)
    xl, yl = evaluate_cf(left, F)
    xr, yr = evaluate_cf(right, F)
    exact = (xl * yr).scale(B) == (xr * yl).scale(C)

    def as_series(x, y):
        lo = x.degree - precision + 1
        return LaurentSeries.from_poly(x, lo) / LaurentSeries.from_poly(y, y.degree - precision + 1)

    sl = as_series(xl, yl) * B
    sr = as_series(xr, yr) * C
    return exact and sl.agrees_with(sr)


@dataclass
class Symmetries:
    first_kind: list
    second_kind: list
    period_one_exception: bool = False


def detect_symmetries(lines, period: int) -> Symmetries:
    """Positions s in one period with P_s = P_{s+1} (first kind) or
    Q_s = Q_{s+1} (second kind).  ``lines`` must hold period + 1 lines."""
    if len(lines) < period + 1:
        raise ValueError("need period + 1 lines")
    first = [lines[s].h for s in range(period) if lines[s].P == lines[s + 1].P]
    second = [lines[s].h for s in range(period) if lines[s].Q == lines[s + 1].Q]
    return Symmetries(first, second, period_one_exception=(period == 1))
