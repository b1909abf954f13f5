"""Exact scalar fields: the rationals and prime fields F_p with p >= 5.

Rationals are plain :class:`fractions.Fraction` values; prime-field elements
are :class:`FpElement`.  A field object (``QQ`` or ``GF(p)``) coerces input,
supplies constants, square roots and random elements, and renders scalars to
JSON.  Integers mix freely with either kind of scalar; a Fraction never mixes
with an FpElement, and elements of different moduli never mix.
"""

from __future__ import annotations

import math
from random import Random
from fractions import Fraction
from functools import lru_cache

from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import DivisionByZero, FieldMismatch

__all__ = [
    "QQ", "GF", "FpElement", "RationalField", "PrimeField",
    "field_of", "scalar_arith", "parse_scalar", "scalar_to_json",
    "scalar_from_json", "format_scalar",
]


class FpElement:
    """An element of the prime field F_p, stored as 0 <= value < p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise FieldMismatch(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return FpElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FpElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if o == 0:
            raise DivisionByZero(f"division by 0 in F_{self.p}")
        return FpElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return FpElement(self._coerce(other), self.p) / self

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FpElement({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field of rational numbers; elements are Fractions."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        if isinstance(x, FpElement):
            raise FieldMismatch("cannot coerce an F_p element into Q")
        raise TypeError(f"cannot coerce {x!r} into Q")

    def contains(self, x):
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def sqrt(self, x):
        """Return a rational square root of x, or None."""
        x = self(x)
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def is_square(self, x):
        return self.sqrt(x) is not None

    def random(self, rng: Random, height=10, nonzero=False):
        while True:
            x = Fraction(rng.randint(-height, height), rng.randint(1, max(1, height // 3)))
            if x or not nonzero:
                return x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p for a prime p >= 5."""

    def __init__(self, p):
        if not isinstance(p, int) or not isprime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p in (2, 3):
            raise ValueError("characteristic 2 and 3 are not supported")
        self.p = p
        self.characteristic = p
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    def __call__(self, x):
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element into F_{self.p}")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return FpElement(x, self.p)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return FpElement(x.numerator * pow(x.denominator, -1, self.p), self.p)
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def contains(self, x):
        return (isinstance(x, FpElement) and x.p == self.p) or (
            isinstance(x, int) and not isinstance(x, bool))

    def sqrt(self, x):
        x = self(x)
        if x.value == 0:
            return self.zero
        r = sqrt_mod(x.value, self.p)
        return None if r is None else FpElement(r, self.p)

    def is_square(self, x):
        return self.sqrt(x) is not None

    def random(self, rng: Random, height=None, nonzero=False):
        lo = 1 if nonzero else 0
        return FpElement(rng.randrange(lo, self.p), self.p)

    def elements(self):
        return (FpElement(i, self.p) for i in range(self.p))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_of(x):
    """Field of a scalar; plain ints are taken to be rational."""
    if isinstance(x, FpElement):
        return GF(x.p)
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return QQ
    raise TypeError(f"{x!r} is not a field scalar")


def scalar_arith(a, b, op):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two scalars of one field."""
    fa, fb = field_of(a), field_of(b)
    if fa != fb:
        raise FieldMismatch(f"{fa!r} vs {fb!r}")
    try:
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        if op == "div":
            if not b:
                raise DivisionByZero("division by zero")
            return fa(a) / b
    except ZeroDivisionError as exc:
        raise DivisionByZero(str(exc)) from exc
    raise ValueError(f"unknown op {op!r}")


def parse_scalar(text, field=QQ):
    """Parse a decimal integer or ``a/b`` string into ``field``."""
    return field(Fraction(text.strip()))


def format_scalar(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def scalar_to_json(x):
    if isinstance(x, FpElement):
        return {"val": x.value, "mod": x.p}
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def scalar_from_json(obj):
    if "mod" in obj:
        return GF(int(obj["mod"]))(int(obj["val"]))
    return Fraction(int(obj["num"]), int(obj["den"]))
