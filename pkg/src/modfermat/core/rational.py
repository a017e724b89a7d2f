"""Helpers for exact rationals (``fractions.Fraction``)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import InvalidArgument


def height(x) -> int:
    """max(|numerator|, denominator)."""
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def parse_rational(text: str) -> Fraction:
    """Parse ``a``, ``-a`` or ``a/b`` exactly; floats are rejected."""
    s = text.strip()
    if not s or any(ch in s for ch in ".eE"):
        raise InvalidArgument(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not an exact rational: {text!r}") from exc


def sort_key(x):
    """Canonical order on rationals: by height, then numerator, then denominator."""
    x = Fraction(x)
    return (height(x), x.numerator, x.denominator)


def rationals_of_height(H: int):
    """All rationals of height <= H, in canonical order."""
    out = [Fraction(0)]
    for b in range(1, H + 1):
        for a in range(1, H + 1):
            if gcd(a, b) == 1:
                out.append(Fraction(a, b))
                out.append(Fraction(-a, b))
    out.sort(key=sort_key)
    return out


def fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
