"""Exact scalars: rationals, truncated Laurent series in a formal epsilon, and
rational gcds.

Rationals are :class:`fractions.Fraction`, which is always normalized with a
positive denominator. :class:`LaurentSeries` carries the expansion of a
quantity in a formal infinitesimal ``eps`` over the exponent window
``[-2, 2]`` together with the highest exponent up to which its coefficients
are known exactly, so a constant term that truncation has corrupted raises
instead of returning a wrong value.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

from .errors import AllZero, NonvanishingPole, WindowOverflow

__all__ = [
    "Rational",
    "LaurentSeries",
    "EPS",
    "as_rational",
    "laurent_constant_term",
    "rational_gcd",
    "is_integer_multiple",
    "PiMultiple",
    "PI_30",
]

Rational = Fraction

WINDOW_LOW = -2
WINDOW_HIGH = 2

_Exact = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a Fraction.

    Floats are rejected: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(value)


class LaurentSeries:
    """Truncated Laurent expansion ``sum_k c_k eps**k`` for ``-2 <= k <= 2``.

    ``prec`` is the largest exponent whose coefficient is exact; everything
    above it has been lost to truncation. Exact polynomials in ``eps`` start
    with ``prec = inf``.
    """

    __slots__ = ("_coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, _Exact] | None = None,
                 prec: float = math.inf):
        clean = {}
        for k, c in (coeffs or {}).items():
            c = as_rational(c)
            if c == 0:
                continue
            if k < WINDOW_LOW:
                raise WindowOverflow(f"term eps**{k} lies below the window")
            if k > WINDOW_HIGH:
                # dropped content: only exact through the window top from now on
                prec = min(prec, WINDOW_HIGH)
                continue
            if k <= prec:
                clean[k] = c
        self._coeffs = clean
        self.prec = prec

    @classmethod
    def constant(cls, value: _Exact) -> "LaurentSeries":
        return cls({0: value})

    def __getitem__(self, k: int) -> Fraction:
        return self._coeffs.get(k, Fraction(0))

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    @property
    def low(self) -> float:
        """Lowest exponent with a nonzero coefficient (``inf`` for zero)."""
        return min(self._coeffs) if self._coeffs else math.inf

    def is_zero(self) -> bool:
        return not self._coeffs

    # arithmetic ------------------------------------------------------------

    @staticmethod
    def _lift(other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentSeries.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentSeries(out, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({k: -c for k, c in self._coeffs.items()}, self.prec)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # Coefficient k of the product is exact while every pair feeding it is.
        prec = min(self.low + other.prec, other.low + self.prec)
        out: dict[int, Fraction] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                k = i + j
                if k < WINDOW_LOW:
                    raise WindowOverflow(
                        f"product produces eps**{k}; factors must carry at most simple poles")
                out[k] = out.get(k, 0) + a * b
        return LaurentSeries(out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        m = self.low
        if m is math.inf:
            raise ZeroDivisionError("inverse of the zero series")
        if m < -1:
            raise WindowOverflow("division requires a divisor with at most a simple pole")
        # self = eps**m * (a0 + a1 eps + ...); a_i is exact for i <= rel.
        rel = self.prec - m
        a0 = self[m]
        b = [1 / a0]
        i = 1
        while i <= min(rel, WINDOW_HIGH + m):
            acc = sum((self[m + j] * b[i - j] for j in range(1, i + 1)), Fraction(0))
            b.append(-acc / a0)
            i += 1
        monomial = len(self._coeffs) == 1
        prec = self.prec - 2 * m if monomial else min(self.prec - 2 * m, WINDOW_HIGH)
        return LaurentSeries({i - m: c for i, c in enumerate(b)}, prec)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))

    def __repr__(self):
        if not self._coeffs:
            body = "0"
        else:
            body = " + ".join(f"({c})*eps**{k}" for k, c in sorted(self._coeffs.items()))
        return f"LaurentSeries({body}, prec={self.prec})"


EPS = LaurentSeries({1: 1})


def laurent_constant_term(s: LaurentSeries | _Exact) -> Fraction:
    """Return the ``eps**0`` coefficient, i.e. the limit ``eps -> 0``.

    Raises :class:`NonvanishingPole` if a negative power survives, and
    :class:`WindowOverflow` if truncation has made the constant term unknown.
    """
    if not isinstance(s, LaurentSeries):
        return as_rational(s)
    poles = {k: c for k, c in s.coefficients.items() if k < 0}
    if poles:
        raise NonvanishingPole(f"limit does not exist, pole terms {poles}")
    if s.prec < 0:
        raise WindowOverflow("constant term was lost to window truncation")
    return s[0]


def rational_gcd(vals: Iterable[_Exact]) -> Fraction:
    """Largest positive ``g`` such that every value is an integer multiple of ``g``.

    >>> rational_gcd([Fraction(4, 7), Fraction(2, 7), 1])
    Fraction(1, 7)
    """
    vals = [as_rational(v) for v in vals]
    if not vals or all(v == 0 for v in vals):
        raise AllZero("gcd of an all-zero set is undefined")
    den = reduce(math.lcm, (v.denominator for v in vals), 1)
    num = reduce(math.gcd, (v.numerator * (den // v.denominator) for v in vals), 0)
    return Fraction(num, den)


def is_integer_multiple(value: _Exact, g: _Exact) -> bool:
    return (as_rational(value) / as_rational(g)).denominator == 1


PI_30 = Decimal("3.141592653589793238462643383279")

_PI_LITERAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*\*?\s*pi\s*$")


@dataclass(frozen=True, order=True)
class PiMultiple:
    """A time ``coef * pi`` with an exact rational coefficient."""

    coef: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coef", as_rational(self.coef))

    @classmethod
    def parse(cls, text: str) -> "PiMultiple":
        """Parse ``"7pi"``, ``"7/2pi"``, ``"-3/4 pi"`` or ``"pi"``."""
        text = text.strip()
        if text in ("pi", "+pi"):
            return cls(Fraction(1))
        m = _PI_LITERAL.match(text)
        if not m:
            raise ValueError(f"not a rational multiple of pi: {text!r}")
        return cls(Fraction(int(m.group(1)), int(m.group(2) or 1)))

    def __float__(self) -> float:
        return float(Decimal(self.coef.numerator) * PI_30 / Decimal(self.coef.denominator))

    def __mul__(self, k):
        return PiMultiple(self.coef * as_rational(k))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return PiMultiple(self.coef / as_rational(k))

    def __str__(self) -> str:
        return f"{self.coef} pi"
