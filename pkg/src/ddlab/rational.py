"""Exact rational scalars.

``fractions.Fraction`` already keeps numerator and denominator coprime with a
positive denominator, so it is used directly as the scalar type.  This module
only adds the string format used in every JSON file ("num/den" or "num") and
the half-angle map that produces exact rational points on the unit circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or exact rational string to ``Fraction``.

    Floats are rejected: they would silently smuggle rounding error into the
    exact pipeline.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"num"`` (optionally signed) exactly."""
    body = text.strip()
    if not body:
        raise ValueError("empty rational string")
    if "/" in body:
        num_s, den_s = body.split("/", 1)
        num, den = int(num_s), int(den_s)
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    return Fraction(int(body))


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def half_angle(u: RationalLike) -> tuple[Fraction, Fraction]:
    """Return ``(sin, cos)`` of the angle whose half-angle tangent is ``u``.

    ``(2u/(1+u^2), (1-u^2)/(1+u^2))`` lies exactly on the unit circle for every
    rational ``u``; ``u = 1`` gives ``(1, 0)`` and ``u = 0`` gives ``(0, 1)``.
    """
    u = to_rational(u)
    d = 1 + u * u
    return 2 * u / d, (1 - u * u) / d


class IrrationalValue(ValueError):
    """An exact computation produced a value outside Q."""


def rational_sqrt(value: Fraction) -> Fraction | None:
    """The exact square root of ``value`` when it is a rational square, else None."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class Surd:
    """A real number ``sign * sqrt(radicand)`` with a nonnegative rational radicand.

    Only what exact squared distances need is supported: squaring, products
    (which may fail to be rational) and conversion to float.
    """

    sign: int
    radicand: Fraction

    def __post_init__(self) -> None:
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if self.sign not in (-1, 0, 1) or (self.sign == 0) != (self.radicand == 0):
            raise ValueError("sign must be -1 or 1 for a nonzero surd and 0 for zero")

    @classmethod
    def of(cls, value: RationalLike) -> "Surd":
        v = to_rational(value)
        return cls((v > 0) - (v < 0), v * v)

    @classmethod
    def sqrt(cls, radicand: RationalLike, sign: int = 1) -> "Surd":
        r = to_rational(radicand)
        return cls(sign if r else 0, r)

    def square(self) -> Fraction:
        return self.radicand

    def times(self, other: "Surd") -> Fraction:
        """The product as an exact rational; raises when it is irrational."""
        root = rational_sqrt(self.radicand * other.radicand)
        if root is None:
            raise IrrationalValue("product of surds is irrational")
        return self.sign * other.sign * root

    def rational(self) -> Fraction | None:
        root = rational_sqrt(self.radicand)
        return None if root is None else self.sign * root

    def __float__(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def to_text(self) -> str:
        exact = self.rational()
        if exact is not None:
            return format_rational(exact)
        body = f"sqrt({format_rational(self.radicand)})"
        return body if self.sign > 0 else "-" + body

    @classmethod
    def from_text(cls, text: str) -> "Surd":
        body = text.strip()
        sign = 1
        if body.startswith("-sqrt("):
            sign, body = -1, body[1:]
        if body.startswith("sqrt(") and body.endswith(")"):
            return cls.sqrt(parse_rational(body[5:-1]), sign)
        return cls.of(parse_rational(body))
