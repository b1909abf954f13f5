"""Somos sequences and elliptic divisibility sequences.

A sequence here is two-sided and only defined on a contiguous window.  A
value outside the window is absent, not zero: once a zero appears the
recursions that divide by it stop, and the sequence stays undefined beyond.

Somos relations are stored in the uniform shape

    gap 2m:    A_{h-m} A_{h+m}   = kappa A_{h-1} A_{h+1} + lam A_h^2
    gap 2m+1:  A_{h-m} A_{h+m+1} = kappa A_{h-1} A_{h+2} + lam A_h A_{h+1}

so Somos-4 is gap 4, Somos-5 gap 5 and so on.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .cfgeneral import QuadraticSurd, detect_periodicity
from .cfquartic import (QuarticCFState, QuarticCurve, check_state, e_values, expand, singular_start,
                        step_forward)
from .curves import Affine, InfinityO, WeierstrassCurve
from .errors import (DivisionByZero, InvalidK, InvariantBroken, Mismatch, NoNormalization,
                     PreconditionFailed, TorsionDegenerate, TorsionTruncation)
from .field import QQ, field_of, format_scalar, scalar_from_json, scalar_to_json
from .poly import Poly


class IndexedSequence:
    """Values on the window lo..hi (inclusive); anything else is absent."""

    def __init__(self, values=None, origin=None):
        self._v = {}
        if isinstance(values, dict):
            self._v = dict(values)
        elif values is not None:
            self._v = {origin + i: x for i, x in enumerate(values)}
        if self._v:
            lo, hi = min(self._v), max(self._v)
            if len(self._v) != hi - lo + 1:
                raise ValueError("sequence values must cover a contiguous window")

    @property
    def lo(self):
        return min(self._v) if self._v else None

    @property
    def hi(self):
        return max(self._v) if self._v else None

    def defined(self, *hs):
        return all(h in self._v for h in hs)

    def __contains__(self, h):
        return h in self._v

    def __getitem__(self, h):
        if isinstance(h, slice):
            return [self._v[i] for i in range(h.start, h.stop)]
        try:
            return self._v[h]
        except KeyError:
            raise KeyError(f"index {h} is outside the defined window {self.lo}..{self.hi}") from None

    def get(self, h, default=None):
        return self._v.get(h, default)

    def items(self):
        return sorted(self._v.items())

    def window(self, lo, hi):
        return [self._v[h] for h in range(lo, hi + 1)]

    def as_dict(self):
        return dict(self._v)

    def __len__(self):
        return len(self._v)

    def __eq__(self, other):
        return isinstance(other, IndexedSequence) and self._v == other._v

    def __repr__(self):
        body = ", ".join(format_scalar(x) for _, x in self.items())
        return f"IndexedSequence(lo={self.lo}: {body})"

    def to_json(self, relation=None):
        out = {"origin": self.lo, "values": [scalar_to_json(x) for _, x in self.items()]}
        if relation is not None:
            out["relation"] = relation.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        return cls([scalar_from_json(x) for x in obj["values"]], obj["origin"])

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "value"])
        for h, x in self.items():
            w.writerow([h, format_scalar(x)])
        return buf.getvalue()


class EDSequence(IndexedSequence):
    """An antisymmetric sequence with W_0 = 0, W_1 = 1.

    ``torsion`` is the least m > 0 with W_m = 0, or None if none was met.
    """

    def __init__(self, values, torsion=None):
        super().__init__(values)
        if self.get(0) != 0 or self.get(1) != 1:
            raise ValueError("an EDS needs W_0 = 0 and W_1 = 1")
        for h, x in self.items():
            if -h in self and self[-h] != -x:
                raise InvariantBroken(f"W_{-h} != -W_{h}")
        self.torsion = torsion


@dataclass(frozen=True)
class SomosRelation:
    gap: int
    kappa: object
    lam: object

    def __post_init__(self):
        if self.gap < 4:
            raise ValueError("gap must be at least 4")
        if not self.kappa and not self.lam:
            raise ValueError("kappa and lambda cannot both vanish")

    @property
    def m(self):
        return self.gap // 2

    def offsets(self):
        """(left, right, kappa pair, lambda pair) of index offsets from h."""
        m = self.m
        if self.gap % 2 == 0:
            return -m, m, (-1, 1), (0, 0)
        return -m, m + 1, (-1, 2), (0, 1)

    def residual(self, seq, h):
        a, b, (p, q), (r, s) = self.offsets()
        return seq[h + a] * seq[h + b] - self.kappa * seq[h + p] * seq[h + q] - self.lam * seq[h + r] * seq[h + s]

    def to_json(self):
        return {"gap": self.gap, "kappa": scalar_to_json(self.kappa), "lambda": scalar_to_json(self.lam)}

    def __str__(self):
        return f"Somos-{self.gap}({format_scalar(self.kappa)}, {format_scalar(self.lam)})"


# -- generation --------------------------------------------------------------

def sequence_from_e(e, A0, A1, lo=None, hi=None) -> IndexedSequence:
    """A_{h-1} A_{h+1} = e_h A_h^2 with A_0, A_1 given.

    Extends in both directions as far as e is known (or to lo/hi) and stops
    after the first zero it produces.
    """
    e = e if isinstance(e, dict) else e.as_dict()
    if not A0 or not A1:
        raise DivisionByZero("A_0 and A_1 must be nonzero")
    A = {0: A0, 1: A1}
    h = 1
    while h in e and (hi is None or h + 1 <= hi) and A[h]:
        A[h + 1] = e[h] * A[h] ** 2 / A[h - 1]
        h += 1
    h = 0
    while h in e and (lo is None or h - 1 >= lo) and A[h]:
        A[h - 1] = e[h] * A[h] ** 2 / A[h + 1]
        h -= 1
    return IndexedSequence(A)


def somos_generate(rel: SomosRelation, initial, start=0, lo=None, hi=None) -> IndexedSequence:
    """Extend ``gap`` consecutive values A_start.. both ways by the relation.

    Extension in a direction stops when the value it must divide by is zero.
    """
    if len(initial) != rel.gap:
        raise ValueError(f"Somos-{rel.gap} needs {rel.gap} initial values")
    if lo is None and hi is None:
        raise ValueError("give lo or hi")
    A = {start + i: x for i, x in enumerate(initial)}
    a, b, (p, q), (r, s) = rel.offsets()
    top, bottom = start + rel.gap - 1, start
    while hi is not None and top < hi:
        h = top + 1 - b
        if not A[h + a]:
            break
        A[top + 1] = (rel.kappa * A[h + p] * A[h + q] + rel.lam * A[h + r] * A[h + s]) / A[h + a]
        top += 1
    while lo is not None and bottom > lo:
        h = bottom - 1 - a
        if not A[h + b]:
            break
        A[bottom - 1] = (rel.kappa * A[h + p] * A[h + q] + rel.lam * A[h + r] * A[h + s]) / A[h + b]
        bottom -= 1
    return IndexedSequence(A)


@dataclass
class RelationCheck:
    ok: bool
    first_failure: Optional[int]
    checked: list
    skipped: list

    def __bool__(self):
        return self.ok


def verify_relation(seq: IndexedSequence, rel: SomosRelation, lo, hi) -> RelationCheck:
    """Exact check of ``rel`` at each h in lo..hi; undefined indices are skipped."""
    a, b, _, _ = rel.offsets()
    checked, skipped, first = [], [], None
    for h in range(lo, hi + 1):
        if not seq.defined(h + a, h + b, h - 1, h + 2):
            skipped.append(h)
            continue
        checked.append(h)
        if first is None and rel.residual(seq, h):
            first = h
    return RelationCheck(first is None and bool(checked), first, checked, skipped)


def e_stream_of(seq: IndexedSequence):
    """e_h = A_{h-1} A_{h+1} / A_h^2 wherever defined."""
    return {h: seq[h - 1] * seq[h + 1] / seq[h] ** 2
            for h, x in seq.items() if x and seq.defined(h - 1, h + 1)}


def e_product_failures(A: IndexedSequence, e: dict):
    """Where A fails the product identities it inherits from its e-stream."""
    bad = []
    for h, _ in A.items():
        if A.defined(h - 2, h + 2) and all(k in e for k in (h - 1, h, h + 1)):
            if A[h - 2] * A[h + 2] != e[h - 1] * e[h] ** 2 * e[h + 1] * A[h] ** 2:
                bad.append(("even", h))
        if A.defined(h - 1, h + 2) and all(k in e for k in (h, h + 1)):
            if A[h - 1] * A[h + 2] != e[h] * e[h + 1] * A[h] * A[h + 1]:
                bad.append(("odd1", h))
        if A.defined(h - 2, h + 3) and all(k in e for k in range(h - 1, h + 3)):
            rhs = e[h - 1] * e[h] ** 2 * e[h + 1] ** 2 * e[h + 2] * A[h] * A[h + 1]
            if A[h - 2] * A[h + 3] != rhs:
                bad.append(("odd2", h))
    return bad


# -- elliptic divisibility sequences ------------------------------------------

def eds_closed_forms(c: QuarticCurve):
    """W_1..W_5 as polynomials in f, v, w (the singular expansion's denominators)."""
    v, k = c.v, c.f_plus_w2
    t = v + 2 * c.w * k
    return {1: c.field.one, 2: v, 3: -v * v * k, 4: -v ** 4 * t,
            5: -v ** 6 * (v * t - k ** 3)}


def _eds_route_recurrence(c: QuarticCurve, hmax):
    F = c.field
    if not c.v:
        return {0: F.zero, 1: F.one, 2: F.zero}, 2
    W = {0: F.zero}
    W.update(eds_closed_forms(c))
    del W[5]
    for h in range(1, 5):
        if not W[h]:
            return {i: W[i] for i in range(h + 1)}, h
    h = 3
    while h + 2 <= hmax:
        nxt = (W[2] ** 2 * W[h - 1] * W[h + 1] - W[3] * W[h] ** 2) / W[h - 2]
        W[h + 2] = nxt
        if not nxt:
            return W, h + 2
        h += 1
    return {i: W[i] for i in range(min(hmax, max(W)) + 1)}, None


def _eds_route_singular(c: QuarticCurve, hmax):
    F = c.field
    W = {0: F.zero, 1: F.one, 2: c.v}
    try:
        start = singular_start(c)
    except TorsionDegenerate:
        W[3] = F.zero
        return W, 3
    e = e_values(expand(c, start, max(0, hmax - 2), truncate=True))
    h = 2
    while h + 1 <= hmax and h in e:
        W[h + 1] = e[h] * W[h] ** 2 / W[h - 1]
        if not W[h + 1]:
            return W, h + 1
        h += 1
    return W, None


def eds_generate(c: QuarticCurve, hmax: int, strict=False) -> EDSequence:
    """W_0..W_hmax (and negatives by antisymmetry), built two ways and compared.

    One route runs W_{h-2}W_{h+2} = W_2^2 W_{h-1}W_{h+1} - W_3 W_h^2 from the
    closed forms for W_1..W_4; the other runs W_{h-1}W_{h+1} = e_h W_h^2 along
    the singular expansion.  Generation ends at the first zero W_m, which is
    recorded as ``torsion``; with ``strict`` that raises TorsionTruncation.
    """
    Wa, ma = _eds_route_recurrence(c, hmax)
    if c.v:
        Wb, mb = _eds_route_singular(c, hmax)
        for h in set(Wa) & set(Wb):
            if Wa[h] != Wb[h]:
                raise Mismatch(h, f"recurrence gives {Wa[h]}, singular expansion gives {Wb[h]}")
        if ma != mb and ma is not None and mb is not None:
            raise Mismatch(min(ma, mb), "routes disagree on the torsion index")
        m = ma if ma is not None else mb
        W = Wa if len(Wa) >= len(Wb) else Wb
    else:
        W, m = Wa, ma
    if m is not None:
        W = {h: x for h, x in W.items() if h <= m}
        if strict and m <= hmax:
            raise TorsionTruncation(m)
    W = {h: x for h, x in W.items() if h <= hmax}
    full = dict(W)
    for h, x in W.items():
        full[-h] = -x
    return EDSequence(full, torsion=m)


@dataclass
class WardReport:
    general_checked: int = 0
    redundant_checked: int = 0
    divisibility_checked: int = 0
    gcd_checked: int = 0
    failures: list = dc_field(default_factory=list)
    notices: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def _is_integral(x):
    return isinstance(x, Fraction) and x.denominator == 1 or isinstance(x, int)


def ward_checks(W: IndexedSequence, M: int = 6, triples=(), divisibility_bound: int = 12) -> WardReport:
    """Check the Ward identities on every index window where W is defined."""
    rep = WardReport()
    for m in range(2, M + 1):
        for h, _ in W.items():
            need = (h - m, h + m, m, m - 1, m + 1, h - 1, h + 1)
            if not W.defined(*need):
                continue
            rep.general_checked += 1
            lhs = W[h - m] * W[h + m]
            rhs = W[m] ** 2 * W[h - 1] * W[h + 1] - W[m - 1] * W[m + 1] * W[h] ** 2
            if lhs != rhs:
                rep.failures.append(("general", h, m))
    for (h, m, n) in triples:
        need = (h - m, h + m, n, h - n, h + n, m, m - n, m + n, h)
        if not W.defined(*need):
            rep.notices.append(f"triple {(h, m, n)} skipped: outside the defined window")
            continue
        rep.redundant_checked += 1
        lhs = W[h - m] * W[h + m] * W[n] ** 2
        rhs = W[h - n] * W[h + n] * W[m] ** 2 - W[m - n] * W[m + n] * W[h] ** 2
        if lhs != rhs:
            rep.failures.append(("redundant", h, m, n))
    pos = [h for h, _ in W.items() if 1 <= h <= divisibility_bound]
    if not all(_is_integral(W[h]) for h in pos):
        rep.notices.append("divisibility skipped: sequence is not integer valued")
        return rep
    ints = {h: int(W[h]) for h in pos}
    if 4 not in ints or not ints[2] or ints[4] % ints[2]:
        rep.notices.append("divisibility skipped: W_2 does not divide W_4")
        return rep
    for a in pos:
        for b in pos:
            if b % a == 0:
                rep.divisibility_checked += 1
                if ints[a] == 0 and ints[b] != 0 or ints[a] and ints[b] % ints[a]:
                    rep.failures.append(("divides", a, b))
    if math.gcd(ints.get(3, 0), ints[4]) == 1:
        for a in pos:
            for b in pos:
                rep.gcd_checked += 1
                if math.gcd(ints[a], ints[b]) != abs(ints[math.gcd(a, b)]):
                    rep.failures.append(("gcd", a, b))
    else:
        rep.notices.append("gcd law skipped: gcd(W_3, W_4) != 1")
    return rep


def random_ward_triples(rng: random.Random, n: int, bound: int):
    """n triples h >= m >= n >= 1 with h + m <= bound."""
    out = []
    while len(out) < n:
        h = rng.randint(1, bound)
        m = rng.randint(1, h)
        k = rng.randint(1, m)
        if h + m <= bound:
            out.append((h, m, k))
    return out


@dataclass
class ShipseyReport:
    checked: list
    failures: list
    gcd_notes: list

    @property
    def ok(self):
        return not self.failures


def shipsey_denominator_check(c: QuarticCurve, hmax: int) -> ShipseyReport:
    """Compare the denominators of hS with W_h^2 and W_h^3, for 1 <= h <= hmax."""
    if c.field != QQ:
        raise PreconditionFailed("integer checks need rational curve data")
    if any(x.denominator != 1 for x in (c.f, c.v, c.u)):
        raise PreconditionFailed("f, v and u must be integers")
    if math.gcd(int(c.v), int(c.u)) != 1:
        raise PreconditionFailed(f"gcd(v, u) = {math.gcd(int(c.v), int(c.u))} != 1")
    E = WeierstrassCurve.from_quartic(c)
    S = Affine(QQ.zero, QQ.zero)
    W = eds_generate(c, hmax + 1)
    P = InfinityO
    checked, failures, notes = [], [], []
    for h in range(1, hmax + 1):
        P = E.add(P, S)
        if P is InfinityO or not W.defined(h - 1, h, h + 1):
            break
        Wh = W[h]
        if P.x.denominator != Wh * Wh or P.y.denominator != abs(Wh) ** 3:
            failures.append(("denominator", h))
        U = P.x * Wh * Wh
        Vn = P.y * Wh ** 3
        if W[h - 1] * W[h + 1] != -U:
            failures.append(("U", h))
        g = math.gcd(int(U), int(Vn))
        if g != abs(int(W[h - 1])):
            notes.append((h, g, W[h - 1]))
        checked.append(h)
    return ShipseyReport(checked, failures, notes)


@dataclass
class TorsionReport:
    m: Optional[int]
    quasi_period: Optional[int]
    period: Optional[int]
    kappa: object = None

    @property
    def found(self):
        return self.m is not None

    @property
    def consistent(self):
        if self.m is None:
            return self.quasi_period is None
        return self.quasi_period == self.m - 1

    @property
    def period_rule_ok(self):
        if self.m is None:
            return True
        allowed = {self.m - 1, 2 * self.m - 2} if self.m % 2 == 0 else {self.m - 1}
        return self.period in allowed


def torsion_detect(c: QuarticCurve, budget: int = 40) -> TorsionReport:
    """Torsion order of S - O from the EDS and from the periodicity of (Y + A)/2."""
    W = eds_generate(c, budget)
    Y = c.irrational()
    surd = QuadraticSurd(Y, c.A, Poly.const(2, c.field))
    info = detect_periodicity(surd, budget)
    if info is None:
        return TorsionReport(W.torsion, None, None)
    return TorsionReport(W.torsion, info.quasi_period, info.period, info.kappa)


# -- coefficients from the curve ---------------------------------------------

def curve_relation(c: QuarticCurve, gap: int) -> SomosRelation:
    """The Somos relation of gap ``gap`` satisfied by every sequence from this curve's e-streams."""
    m = gap // 2
    W = eds_generate(c, m + 2)
    if not W.defined(m + 2) and gap % 2 or not W.defined(m + 1):
        raise TorsionTruncation(W.torsion)
    if gap % 2 == 0:
        d = W[1] ** 2
        return SomosRelation(gap, W[m] ** 2 / d, -W[m - 1] * W[m + 1] / d)
    d = W[1] * W[2]
    if not d:
        raise DivisionByZero("W_2 = 0: odd-gap form undefined")
    return SomosRelation(gap, W[m] * W[m + 1] / d, -W[m - 1] * W[m + 2] / d)


def curve_to_somos_coefficients(c: QuarticCurve):
    return {g: curve_relation(c, g) for g in (4, 5, 6, 8)}


def derive_somos8_coefficients(W2, W3, W4, W5) -> SomosRelation:
    """Somos-8 coefficients (W_4^2, -W_3 W_5) implied by an elliptic Somos-4."""
    return SomosRelation(8, W4 * W4, -W3 * W5)


def somos8_identity_cubic(W2, W3, W4, W5):
    """W_3^4 = W_2^3 W_3 W_4 - W_3 W_5 (holds for any EDS with W_1 = 1)."""
    return W3 ** 4 == W2 ** 3 * W3 * W4 - W3 * W5


def somos8_identity_closed(c: QuarticCurve):
    """W_2^5 + W_4 = -2 v^4 w (f + w^2), using the curve's closed forms."""
    W = eds_closed_forms(c)
    return W[2] ** 5 + W[4] == -2 * c.v ** 4 * c.w * c.f_plus_w2


def somos8_identity_as_printed(c: QuarticCurve):
    """W_2^5 + W_4 = W_2^2 W_3; false except on special curves."""
    W = eds_closed_forms(c)
    return W[2] ** 5 + W[4] == W[2] ** 2 * W[3]


# -- fitting, twisting and renormalizing -------------------------------------

def _rel_rows(seq, gap, h):
    a, b, (p, q), (r, s) = SomosRelation(gap, 1, 0).offsets()
    if not seq.defined(h + a, h + b, h + p, h + q, h + r, h + s):
        return None
    return seq[h + p] * seq[h + q], seq[h + r] * seq[h + s], seq[h + a] * seq[h + b]


def fit_relation(seq: IndexedSequence, gap: int) -> Optional[SomosRelation]:
    """Solve two instances of the gap-``gap`` relation for (kappa, lambda), then confirm on the rest."""
    rows = [r for h, _ in seq.items() if (r := _rel_rows(seq, gap, h)) is not None]
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            (x1, y1, z1), (x2, y2, z2) = rows[i], rows[j]
            det = x1 * y2 - x2 * y1
            if det:
                kappa = (z1 * y2 - z2 * y1) / det
                lam = (x1 * z2 - x2 * z1) / det
                if not kappa and not lam:
                    return None
                rel = SomosRelation(gap, kappa, lam)
                if all(x * kappa + y * lam == z for x, y, z in rows):
                    return rel
                return None
    return None


def twist_transform(A: IndexedSequence, kappa) -> IndexedSequence:
    """B_h = kappa^{h(h+1)/2} A_h; the e-stream of B is kappa times that of A."""
    if not kappa:
        raise DivisionByZero("twist factor must be nonzero")
    return IndexedSequence({h: kappa ** (h * (h + 1) // 2) * x for h, x in A.items()})


def twist_coefficients(rel: SomosRelation, kappa) -> SomosRelation:
    """Coefficients of the twisted sequence, from the e-stream scaling."""
    m = rel.m
    if rel.gap % 2 == 0:
        return SomosRelation(rel.gap, kappa ** (m * m - 1) * rel.kappa, kappa ** (m * m) * rel.lam)
    return SomosRelation(rel.gap, kappa ** (m * m + m - 2) * rel.kappa, kappa ** (m * m + m) * rel.lam)


@dataclass
class Renormalization:
    B: IndexedSequence
    c: dict
    source: SomosRelation
    target: SomosRelation


def integer_renormalize(A: IndexedSequence, target: SomosRelation, c0=None) -> Renormalization:
    """Divide A's e-stream by a c-stream so the result satisfies ``target``.

    For Somos-5 the c-stream has period two with c_h c_{h+1} = P; for
    Somos-4 it is constant.  B keeps B_0 = A_0 and B_1 = A_1 and satisfies
    c_h B_{h-1} B_{h+1} = e_h B_h^2.  By default c_0 = e_0, which makes
    B_{-1} = B_0 = B_1.
    """
    src = fit_relation(A, target.gap)
    if src is None:
        raise NoNormalization(f"A satisfies no Somos-{target.gap} relation on its window")
    e = e_stream_of(A)
    if not e:
        raise NoNormalization("sequence too short")
    one = field_of(next(iter(e.values()))).one
    if target.gap == 5:
        if src == target:
            c_of = lambda h: one  # noqa: E731
        else:
            if not target.kappa or not target.lam or not src.kappa:
                raise NoNormalization("zero coefficient")
            rk, rl = src.kappa / target.kappa, src.lam / target.lam
            P = rl / rk
            if P * P != rk:
                raise NoNormalization(f"no P with P^2 = {rk} and P^3 = {rl}")
            c_even = e[0] if c0 is None else c0
            if not c_even:
                raise NoNormalization("c_0 = 0")
            c_odd = P / c_even
            c_of = lambda h: c_even if h % 2 == 0 else c_odd  # noqa: E731
    elif target.gap == 4:
        if not target.kappa or not target.lam or not src.kappa:
            raise NoNormalization("zero coefficient")
        rk, rl = src.kappa / target.kappa, src.lam / target.lam
        C = rl / rk
        if C ** 3 != rk:
            raise NoNormalization(f"no c with c^3 = {rk} and c^4 = {rl}")
        c_of = lambda h: C  # noqa: E731
    else:
        raise NoNormalization("only Somos-4 and Somos-5 targets are supported")
    c = {h: c_of(h) for h in e}
    eps = {h: e[h] / c[h] for h in e}
    B = sequence_from_e(eps, A[0], A[1], lo=A.lo, hi=A.hi)
    chk = verify_relation(B, target, B.lo, B.hi)
    if not chk.ok:
        raise NoNormalization(f"renormalized sequence fails the target at h={chk.first_failure}")
    return Renormalization(B, c, src, target)


def products_divisible(A: IndexedSequence, left: int, right: int, d: int, hs):
    """h in ``hs`` where A_{h+left} A_{h+right} / d is not an integer (skips undefined)."""
    bad = []
    for h in hs:
        if A.defined(h + left, h + right):
            q = Fraction(A[h + left] * A[h + right]) / d
            if q.denominator != 1:
                bad.append(h)
    return bad


# -- the reprise family ------------------------------------------------------

@dataclass
class Reprise:
    k: object
    curve: QuarticCurve
    start: QuarticCFState
    c: tuple


def reprise_solve(k, field=QQ) -> Reprise:
    """The curve family whose normalized e-stream starts 1, 1, 2: v = 6k^3, 4f = -29k^2, 2w = 5k."""
    k = field(k)
    if not k:
        raise InvalidK("k must be nonzero")
    v = 6 * k ** 3
    f = -29 * k * k / 4
    w = 5 * k / 2
    w0 = 3 * k / 2
    c = QuarticCurve.from_fvw(f, v, w, field)
    if k * k != -c.f_plus_w2 or k ** 3 + 2 * w * k * k - v:
        raise InvariantBroken("reprise constraints fail")
    e0, e1 = 2 * k * k, 3 * k * k
    start = QuarticCFState(0, 2 * k * k, w0, e0, e1)
    check_state(start, c)
    if e0 * e1 != v * k:
        raise InvariantBroken("e_0 e_1 != vk")
    e2 = step_forward(start, c).e_next
    if e1 * e2 != 2 * v * k:
        raise InvariantBroken("e_1 e_2 != 2vk")
    return Reprise(k, c, start, (e0, e1))
