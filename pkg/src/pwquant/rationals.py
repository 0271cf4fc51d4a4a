"""Exact rational arithmetic for every quantizer computation.

The rational type is stdlib ``fractions.Fraction``: it already keeps values
in canonical form (lowest terms, positive denominator) after every
operation, supports arbitrary-precision integers, and defines a total
order, so this module only adds the glue the rest of the package needs.
The wire format for rationals is always the string ``"num/den"``, with the
denominator printed even when it is 1.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(?P<sign>[+-]?)(?P<num>\d+)(?:/(?P<den>\d+))?$")


def rational(num: int, den: int = 1) -> Fraction:
    """Build an exact rational from an integer numerator and denominator."""
    return Fraction(num, den)


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or a bare integer string.

    Decimal and float notation is rejected on purpose; wire payloads must
    stay exact.
    """
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group("num"))
    if m.group("sign") == "-":
        num = -num
    den = int(m.group("den")) if m.group("den") else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction | int) -> str:
    """Serialize to ``"num/den"`` in lowest terms, denominator always shown."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def rat_pow(base: Fraction | int, exp: int) -> Fraction:
    """Integer power with exact result; 0 to a negative power raises."""
    if not isinstance(exp, int):
        raise TypeError("exponent must be an int")
    b = Fraction(base)
    if b == 0 and exp < 0:
        raise ZeroDivisionError("0 cannot be raised to a negative power")
    return b**exp


def compare(a: Fraction | int, b: Fraction | int) -> int:
    """Three-way comparison: -1, 0 or 1. Exact, no tolerance anywhere."""
    fa, fb = Fraction(a), Fraction(b)
    if fa < fb:
        return -1
    return 1 if fa > fb else 0


def as_float(x: Fraction | int) -> float:
    """Nearest double; the only sanctioned exit from exact arithmetic."""
    return float(Fraction(x))
