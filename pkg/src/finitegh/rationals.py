"""Parsing and canonical rendering of exact rationals.

All scalars in the package are :class:`fractions.Fraction`. The text form is
``p/q`` in lowest terms with ``q > 0``, or a bare integer when ``q == 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``int``, ``Fraction`` or a ``p/q`` / integer string.

    Floats are rejected: a float has already lost exactness.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if m is None:
            raise ValueError(f"not a rational: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(num, den)
    raise TypeError(f"cannot read a rational from {type(value).__name__}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_json_value(q: Fraction) -> Union[int, str]:
    """Integers stay bare JSON numbers; everything else becomes ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = lcm(out, v.denominator)
    return out
