"""Dense univariate polynomials and truncated Laurent series in 1/X.

A :class:`Poly` is exact.  A :class:`LaurentSeries` knows its coefficients for
the exponents ``top, top-1, ..., low`` and nothing below ``low``; arithmetic
propagates that bound so that every printed coefficient is certified.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import (DivisionByZero, FieldMismatch, InvariantBroken,
                     NonSquareLeadingCoefficient, OddDegree,
                     PrecisionExhausted)
from .field import QQ, format_scalar, scalar_from_json, scalar_to_json

NEG_INF = -math.inf


class Poly:
    """Polynomial in X over ``field``; ``coeffs[i]`` is the coefficient of X^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, coeffs, field=QQ):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # construction helpers
    @classmethod
    def const(cls, c, field=QQ):
        return cls([c], field)

    @classmethod
    def x(cls, field=QQ):
        return cls([0, 1], field)

    @classmethod
    def monomial(cls, n, c=1, field=QQ):
        return cls([0] * n + [c], field)

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        return Poly([other], self.field)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __add__(self, other):
        if isinstance(other, LaurentSeries):
            return NotImplemented
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)], self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        if isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return NotImplemented
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Poly([], self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly([1], self.field)
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(o.coeffs) - 1
        inv = self.field.one / o.lc()
        quo = [self.field.zero] * max(0, len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return Poly(quo, self.field), Poly(rem[:db] if db else [], self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InvariantBroken(f"({self}) is not divisible by ({other})")
        return q

    def scale(self, c):
        return Poly([c * a for a in self.coeffs], self.field)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.one / self.lc())

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.field)

    def gcd(self, other):
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def has_repeated_root(self):
        return self.gcd(self.derivative()).degree > 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        try:
            return self == self._lift(other)
        except (TypeError, FieldMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            s = format_scalar(c)
            neg = s.startswith("-")
            s = s.lstrip("-")
            if i == 0:
                body = s
            else:
                mono = "X" if i == 1 else f"X^{i}"
                body = mono if s == "1" else f"{s}*{mono}"
            terms.append(("- " if neg else "+ ") + body)
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def to_json(self):
        return [scalar_to_json(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, arr, field=None):
        cs = [scalar_from_json(o) for o in arr]
        if field is None:
            field = QQ if not cs or isinstance(cs[0], Fraction) else _field_of(cs[0])
        return cls(cs, field)


def _field_of(c):
    from .field import field_of
    return field_of(c)


_POLY_TOKEN = re.compile(r"\s*([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*(X(?:\s*\^\s*([0-9]+))?)?\s*", re.I)


def parse_poly(text, field=QQ):
    """Parse strings such as ``"X^4 - 6*X^2 + 4*X + 1"`` or ``"X^4-6X^2+4X+1"``."""
    s = text.replace("**", "^").replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _POLY_TOKEN.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} near {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing sign in {text!r} near {s[pos:]!r}")
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            c = -c
        e = 0
        if m.group(3):
            e = int(m.group(4)) if m.group(4) else 1
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    n = max(coeffs)
    return Poly([coeffs.get(i, 0) for i in range(n + 1)], field)


class LaurentSeries:
    """Truncated Laurent series ``sum c_k X^k`` for ``low <= k <= top``.

    ``coeffs[0]`` is the coefficient of ``X^top``.  After normalization the
    leading coefficient is nonzero; a series with no nonzero coefficient in its
    known window is zero to precision and has ``coeffs == ()``, ``top = low - 1``.
    """

    __slots__ = ("field", "top", "coeffs")

    def __init__(self, top, coeffs, field=QQ):
        cs = [field(c) for c in coeffs]
        low = top - len(cs) + 1
        k = 0
        while k < len(cs) and not cs[k]:
            k += 1
        self.field = field
        self.coeffs = tuple(cs[k:])
        self.top = top - k if self.coeffs else low - 1

    @property
    def low(self):
        """Lowest exponent whose coefficient is known."""
        return self.top - len(self.coeffs) + 1

    @property
    def precision(self):
        return len(self.coeffs)

    @classmethod
    def from_poly(cls, p: Poly, low):
        if p.is_zero():
            return cls(low - 1, [], p.field)
        top = max(p.degree, low - 1)
        return cls(top, [p[k] for k in range(top, low - 1, -1)], p.field)

    def is_zero_to_precision(self):
        return not self.coeffs

    @property
    def degree(self):
        if not self.coeffs:
            raise PrecisionExhausted(f"series vanishes to precision X^{self.low}")
        return self.top

    def coeff(self, k):
        if k < self.low:
            raise PrecisionExhausted(f"coefficient of X^{k} is beyond precision")
        if k > self.top:
            return self.field.zero
        return self.coeffs[self.top - k]

    def _lift(self, other):
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, Poly):
            return LaurentSeries.from_poly(other, self.low)
        return LaurentSeries.from_poly(Poly([other], self.field), self.low)

    def __add__(self, other):
        o = self._lift(other)
        low = max(self.low, o.low)
        top = max(self.top, o.top, low - 1)
        cs = [self._c(k) + o._c(k) for k in range(top, low - 1, -1)]
        return LaurentSeries(top, cs, self.field)

    __radd__ = __add__

    def _c(self, k):
        if k > self.top or k < self.low:
            return self.field.zero
        return self.coeffs[self.top - k]

    def __neg__(self):
        return LaurentSeries(self.top, [-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (LaurentSeries, Poly)):
            return LaurentSeries(self.top, [c * other for c in self.coeffs], self.field)
        o = self._lift(other) if isinstance(other, LaurentSeries) else _poly_series(other, self)
        if not self.coeffs or not o.coeffs:
            # zero to precision times something: known down to low + other.top
            bound = (self.low + o.top) if not self.coeffs else (o.low + self.top)
            return LaurentSeries(bound - 1, [], self.field)
        n = min(len(self.coeffs), len(o.coeffs))
        a, b = self.coeffs, o.coeffs
        out = []
        for k in range(n):
            acc = self.field.zero
            for i in range(k + 1):
                acc += a[i] * b[k - i]
            out.append(acc)
        return LaurentSeries(self.top + o.top, out, self.field)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise PrecisionExhausted("cannot invert a series that vanishes to precision")
        a = self.coeffs
        n = len(a)
        inv0 = self.field.one / a[0]
        out = [inv0]
        for k in range(1, n):
            acc = self.field.zero
            for i in range(1, k + 1):
                acc += a[i] * out[k - i]
            out.append(-acc * inv0)
        return LaurentSeries(-self.top, out, self.field)

    def __truediv__(self, other):
        if isinstance(other, (LaurentSeries, Poly)):
            o = self._lift(other) if isinstance(other, LaurentSeries) else _poly_series(other, self)
            return self * o.inverse()
        return self * (self.field.one / self.field(other))

    def truncate(self, n):
        """Keep only the first n known coefficients."""
        return LaurentSeries(self.top, self.coeffs[:n], self.field)

    def poly_part(self):
        if self.low > 0:
            raise PrecisionExhausted("polynomial part not determined at this precision")
        return Poly([self._c(k) for k in range(0, max(self.top, -1) + 1)], self.field)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field == other.field and self.top == other.top
                and self.coeffs == other.coeffs)

    def agrees_with(self, other):
        """True when both series coincide on their common known window."""
        o = self._lift(other)
        low = max(self.low, o.low)
        top = max(self.top, o.top)
        return all(self._c(k) == o._c(k) for k in range(top, low - 1, -1))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs[:8]):
            if c:
                terms.append(f"{format_scalar(c)}*X^{self.top - i}")
        return "LaurentSeries(" + " + ".join(terms) + f" + O(X^{self.low - 1}))"


def _poly_series(p: Poly, like: LaurentSeries):
    """A polynomial as a series with the same relative precision as ``like``."""
    if p.field != like.field:
        raise FieldMismatch(f"{p.field!r} vs {like.field!r}")
    if p.is_zero():
        return LaurentSeries(-10**9, [], p.field)
    n = max(len(like.coeffs), 1)
    return LaurentSeries.from_poly(p, p.degree - n + 1)


def laurent_sqrt(D: Poly, precision):
    """Square root of D in F((1/X)) with ``precision`` certified terms.

    The root with leading coefficient ``field.sqrt(lc(D))`` is taken.  Newton's
    iteration Y <- (Y + D/Y)/2 starts from that leading monomial; each pass
    doubles the number of correct terms.
    """
    if D.is_zero():
        raise ValueError("square root of zero")
    if D.degree % 2:
        raise OddDegree(f"degree {D.degree} is odd")
    root = D.field.sqrt(D.lc())
    if root is None:
        raise NonSquareLeadingCoefficient(f"leading coefficient {D.lc()} is not a square")
    half = D.degree // 2
    Ds = LaurentSeries.from_poly(D, D.degree - precision + 1)
    y = LaurentSeries(half, [root] + [0] * (precision - 1), D.field)
    two_inv = D.field.one / 2
    correct = 1
    while True:
        nxt = (y + Ds / y) * two_inv
        if correct >= precision and nxt == y:
            return y
        y = nxt
        correct *= 2


def poly_part(s: LaurentSeries):
    return s.poly_part()
