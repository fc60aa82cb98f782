"""Exact rational vectors stored as integer numerators over one denominator.

A vector ``(nums, den)`` stands for ``[n / den for n in nums]``. The normal
form has ``den > 0`` and ``gcd(den, *nums) == 1``, so two vectors are equal iff
their tuples are equal. Working in plain ints keeps the hot loops of the axiom
checkers an order of magnitude faster than element-wise ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence, Tuple

from .errors import ParseError

Vec = Tuple[Tuple[int, ...], int]


def normalize(nums: Sequence[int], den: int) -> Vec:
    if den == 1:
        return tuple(nums), 1
    if den < 0:
        nums = [-n for n in nums]
        den = -den
    g = gcd(den, *nums)
    if g > 1:
        return tuple(n // g for n in nums), den // g
    return tuple(nums), den


def from_rationals(values: Iterable) -> Vec:
    fracs = [as_fraction(v) for v in values]
    den = lcm(*(f.denominator for f in fracs)) if fracs else 1
    return normalize([f.numerator * (den // f.denominator) for f in fracs], den)


def common(a: Vec, b: Vec) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Rescale two vectors onto a shared denominator."""
    (na, da), (nb, db) = a, b
    if da == db:
        return na, nb, da
    d = lcm(da, db)
    sa, sb = d // da, d // db
    return (
        tuple(n * sa for n in na) if sa != 1 else na,
        tuple(n * sb for n in nb) if sb != 1 else nb,
        d,
    )


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction` without ever going through float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals are rejected to keep files exact."""
    s = text.strip()
    num, slash, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if slash else 1
    except ValueError:
        raise ParseError(f"not an exact rational 'p/q': {text!r}") from None
    if q == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(value) -> str:
    """Render as ``"p/q"`` in lowest terms, always with an explicit denominator."""
    f = as_fraction(value)
    return f"{f.numerator}/{f.denominator}"
