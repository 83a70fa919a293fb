"""Exact rational scalars.

All scalars are :class:`flint.fmpq` values: arbitrary precision, always in
lowest terms with a positive denominator.
"""
from fractions import Fraction

from flint import fmpq

Rational = fmpq

ZERO = fmpq(0)
ONE = fmpq(1)


def to_rational(x) -> fmpq:
    """Coerce ints, strings ``"p/q"``, Fractions and fmpq values to fmpq."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def parse_rational(text: str) -> fmpq:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if "/" in text:
        num, den = text.split("/", 1)
        den_i = int(den)
        if den_i == 0:
            raise ZeroDivisionError("zero denominator in " + repr(text))
        return fmpq(int(num), den_i)
    return fmpq(int(text))


def format_rational(q) -> str:
    q = to_rational(q)
    if q.q == 1:
        return str(q.p)
    return f"{q.p}/{q.q}"
