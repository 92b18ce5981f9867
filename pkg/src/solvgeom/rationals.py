"""Exact scalars.

Every scalar in this package is a ``fractions.Fraction``: arbitrary precision,
always reduced, denominator kept positive.  Files store rationals as the
strings ``"p/q"`` (or bare ``"p"`` when the denominator is 1); the two
functions here are the only parse/format points, so the wire format cannot
drift.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

Rat = Fraction

RatLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def rat(value: RatLike) -> Fraction:
    """Coerce an int, ``"p/q"`` string, or Fraction to a Fraction.

    Floats are rejected deliberately: Fraction(0.1) would smuggle binary
    rounding error into what is supposed to be exact input.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional sign, no whitespace inside)."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(value: RatLike) -> str:
    q = rat(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
