"""Exact rational helpers: literal parsing and fixed-point rendering."""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from numbers import Rational

_LITERAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?")


def to_rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction without passing through binary floats.

    Strings may be integers, decimals (``"0.888"``) or fractions (``"3/2"``).
    Floats are read through their shortest repr, so ``0.6`` becomes ``3/5``.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not _LITERAL.fullmatch(text):
            raise ValueError(f"not a rational literal: {value!r}")
        if "/" in text:
            head, den = text.split("/")
            if int(den) == 0:
                raise ValueError(f"zero denominator: {value!r}")
            return Fraction(head) / int(den)
        return Fraction(text)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_decimal(q: Fraction, places: int = 4) -> str:
    """Round-half-even rendering of ``q`` with exactly ``places`` decimals."""
    scaled = round(q * 10**places)  # Fraction.__round__ is exact half-even
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_fraction(q: Fraction) -> str:
    """Always ``num/den``, including ``1/1`` and ``0/1``."""
    return f"{q.numerator}/{q.denominator}"
