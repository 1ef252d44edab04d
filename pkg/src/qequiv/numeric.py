"""Exact scalars and the extended real line.

Every coordinate, probability and mass in the package is a
:class:`fractions.Fraction`.  The two infinities are the float values
``-math.inf`` and ``math.inf``; Python orders them correctly against any
``Fraction`` without rounding, so ``Fraction | float`` (infinite floats only)
is the extended real type.  Finite floats are never allowed to leak in:
:func:`to_rational` converts them exactly at the boundary.
"""
from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from typing import Union

Rational = Fraction
ExtendedReal = Union[Fraction, float]

NEG_INF: float = -math.inf
POS_INF: float = math.inf

LESS, EQUAL, GREATER = -1, 0, 1


class ParseError(ValueError):
    """Malformed numeric literal.  ``position`` is the 0-based offending index."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.reason = reason
        super().__init__(f"{reason} at position {position} in {text!r}")


def is_finite(x: ExtendedReal) -> bool:
    return not (isinstance(x, float) and math.isinf(x))


def _digits(text: str, i: int) -> int:
    j = i
    while j < len(text) and text[j] in "0123456789":
        j += 1
    return j


def parse_decimal(text: str) -> Fraction:
    """Parse ``[+-]?digits[.digits][(e|E)[+-]?digits]`` into an exact Fraction.

    >>> parse_decimal("5.21478")
    Fraction(260739, 50000)
    """
    if not isinstance(text, str):
        raise TypeError(f"expected str, got {type(text).__name__}")
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s:
        raise ParseError(text, 0, "empty number")
    i = 0
    sign = 1
    if s[i] in "+-":
        sign = -1 if s[i] == "-" else 1
        i += 1
    j = _digits(s, i)
    if j == i:
        raise ParseError(text, offset + i, "expected digit")
    int_part = s[i:j]
    frac_part = ""
    i = j
    if i < len(s) and s[i] == ".":
        j = _digits(s, i + 1)
        if j == i + 1:
            raise ParseError(text, offset + i + 1, "expected digit after '.'")
        frac_part = s[i + 1:j]
        i = j
    exponent = 0
    if i < len(s) and s[i] in "eE":
        k = i + 1
        esign = 1
        if k < len(s) and s[k] in "+-":
            esign = -1 if s[k] == "-" else 1
            k += 1
        j = _digits(s, k)
        if j == k:
            raise ParseError(text, offset + k, "expected exponent digit")
        exponent = esign * int(s[k:j])
        i = j
    if i != len(s):
        raise ParseError(text, offset + i, f"unexpected character {s[i]!r}")
    mantissa = int(int_part + frac_part)
    exponent -= len(frac_part)
    if exponent >= 0:
        return Fraction(sign * mantissa * 10**exponent)
    return Fraction(sign * mantissa, 10**-exponent)


def parse_rational(text: str) -> Fraction:
    """Accept either ``a/b`` (integers) or a decimal literal."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        n = parse_decimal(num)
        d = parse_decimal(den)
        if n.denominator != 1:
            raise ParseError(text, 0, "numerator must be an integer")
        if d.denominator != 1:
            raise ParseError(text, len(num) + 1, "denominator must be an integer")
        if d == 0:
            raise ParseError(text, len(num) + 1, "zero denominator")
        return n / d
    return parse_decimal(s)


def parse_extended(text: str) -> ExtendedReal:
    s = text.strip().lower()
    if s in ("-inf", "-infinity"):
        return NEG_INF
    if s in ("inf", "+inf", "infinity", "+infinity"):
        return POS_INF
    return parse_rational(text)


def to_rational(value) -> Fraction:
    """Exact conversion of int / Fraction / Decimal / str / finite float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"not a finite number: {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def compare(a: ExtendedReal, b: ExtendedReal) -> int:
    """Three-way exact comparison on the extended reals (-1, 0, 1)."""
    if a < b:
        return LESS
    if a > b:
        return GREATER
    return EQUAL


def negate(x: ExtendedReal) -> ExtendedReal:
    return -x


def terminating(q: Fraction) -> bool:
    d = q.denominator
    for f in (2, 5):
        while d % f == 0:
            d //= f
    return d == 1


def format_decimal(q: Fraction, places: int | None = None) -> str:
    """Decimal text for ``q``.

    Terminating fractions are written exactly when ``places`` is None;
    otherwise the value is rounded half-even to ``places`` fractional digits.
    """
    if places is None:
        if not terminating(q):
            raise ValueError(f"{q} has no finite decimal expansion")
        places = 0
        while (q * 10**places).denominator != 1:
            places += 1
        scaled = q.numerator * 10**places // q.denominator
    else:
        scaled = round(q * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_rational(q: ExtendedReal) -> str:
    """``a/b`` form; integers without the slash; infinities as ``-inf``/``+inf``."""
    if not is_finite(q):
        return "-inf" if q < 0 else "+inf"
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_approx(q: ExtendedReal, places: int = 12) -> str:
    """Human-facing decimal: exact if it terminates within ``places``, else rounded."""
    if not is_finite(q):
        return "-inf" if q < 0 else "+inf"
    if terminating(q):
        text = format_decimal(q)
        if "." not in text or len(text.split(".")[1]) <= places:
            return text
    return format_decimal(q, places)
