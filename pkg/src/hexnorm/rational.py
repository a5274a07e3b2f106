"""Exact rational scalars.

All certified computations use ``gmpy2.mpq``.  Values cross the package
boundary as ``"num/den"`` strings.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq

__all__ = ["Q", "ZERO", "ONE", "as_q", "parse_q", "format_q", "parse_tuple", "is_rational"]

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def is_rational(value) -> bool:
    return isinstance(value, (int, _RationalABC)) or type(value) is type(ZERO)


def as_q(value) -> mpq:
    """Coerce ints, Fractions, mpq and "num/den" strings to mpq.

    Floats are rejected: they would silently leak rounding into exact paths.
    """
    if type(value) is type(ZERO):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_q(value)
    if isinstance(value, _RationalABC):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_q(text: str) -> mpq:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "/" in s:
        num, den = s.split("/", 1)
        n, d = int(num.strip()), int(den.strip())
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return mpq(n, d)
    return mpq(int(s))


def format_q(value) -> str:
    """Canonical ``num/den`` form, denominator always present."""
    q = as_q(value)
    return f"{int(q.numerator)}/{int(q.denominator)}"


def parse_tuple(text: str, length: int | None = None) -> tuple[mpq, ...]:
    """Parse ``"1/2,3/4"`` into a tuple of rationals."""
    parts = [p for p in text.split(",")]
    values = tuple(parse_q(p) for p in parts)
    if length is not None and len(values) != length:
        raise ValueError(f"expected {length} comma-separated rationals, got {len(values)} in {text!r}")
    return values
