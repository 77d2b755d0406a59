"""Exact rational scalars and their textual form.

``Rational`` is the standard-library ``fractions.Fraction``: always
canonical (reduced, positive denominator) and exact under arithmetic.
The textual format is ``p/q`` or ``p`` with an optional leading minus;
decimals are never read or written.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Rational:
    """Parse ``p`` or ``p/q`` into a canonical rational."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        from satpoly.errors import InputError

        raise InputError(f"not a rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            from satpoly.errors import InputError

            raise InputError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Rational) -> str:
    """Render a rational as ``p`` or ``p/q`` (never a decimal)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_vector(tokens: list[str]) -> list[Rational]:
    return [parse_rational(t) for t in tokens]


def format_vector(values) -> str:
    return " ".join(format_rational(v) for v in values)
