"""Exact rational scalars and vectors.

``fractions.Fraction`` is the scalar type: it is always kept in lowest
terms with a positive denominator, which is exactly the canonical form
the encoding-length functions assume. Vectors are plain tuples.
"""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

Rational = Fraction
RationalVector = Tuple[Fraction, ...]
Number = Union[int, Fraction, str]

RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class Norm(str, Enum):
    L1 = "l1"
    LINF = "linf"

    @property
    def dual(self) -> "Norm":
        return Norm.LINF if self is Norm.L1 else Norm.L1


def as_norm(which) -> Norm:
    if isinstance(which, Norm):
        return which
    try:
        return Norm(str(which).lower())
    except ValueError:
        raise ValueError(f"unknown norm {which!r}; expected 'l1' or 'linf'") from None


def to_rational(x: Number) -> Fraction:
    """Coerce ``x`` to a Fraction without ever going through floating point."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def vec(xs: Iterable[Number]) -> RationalVector:
    return tuple(to_rational(x) for x in xs)


def zeros(n: int) -> RationalVector:
    return (Fraction(0),) * n


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q``. Raises ValueError on malformed input or q = 0."""
    t = text.strip()
    if not RATIONAL_RE.match(t):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in t:
        p, q = t.split("/")
        if int(q) == 0:
            raise ValueError("zero denominator")
        return Fraction(int(p), int(q))
    return Fraction(int(t))


def format_rational(r: Fraction) -> str:
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def canonical(r: Number) -> Fraction:
    r = to_rational(r)
    return Fraction(r.numerator, r.denominator)


# -- encoding lengths -------------------------------------------------------

def encoding_length_int(n: int) -> int:
    """1 + ceil(log2(|n| + 1)), computed exactly with integer bit lengths."""
    # ceil(log2(k)) for k >= 1 equals (k - 1).bit_length()
    return 1 + abs(n).bit_length()


def encoding_length_rat(r: Number) -> int:
    r = to_rational(r)
    return encoding_length_int(r.numerator) + encoding_length_int(r.denominator)


def encoding_length_vec(v: Iterable[Number]) -> int:
    return sum(encoding_length_rat(x) for x in v)


# -- norms and vector helpers -------------------------------------------------

def norm(v: Iterable[Number], which=Norm.L1) -> Fraction:
    which = as_norm(which)
    vals = [abs(to_rational(x)) for x in v]
    if which is Norm.L1:
        return sum(vals, Fraction(0))
    return max(vals, default=Fraction(0))


def l2_norm_squared(v: Iterable[Number]) -> Fraction:
    return sum((to_rational(x) ** 2 for x in v), Fraction(0))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        from .errors import DimensionError

        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RationalVector:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> RationalVector:
    return tuple(a + b for a, b in zip(u, v))


def scale(t: Fraction, v: Sequence[Fraction]) -> RationalVector:
    return tuple(t * a for a in v)


def is_integral(x: Fraction) -> bool:
    return x.denominator == 1
