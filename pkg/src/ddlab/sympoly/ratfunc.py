"""Quotients of MultiPoly values with structured cancellation.

There is no general multivariate gcd here.  Fractions are tidied by removing
rational content, cancelling a common monomial, and trial-dividing numerator
and denominator by a short list of known factors.  Everything the
derivative-test pipeline puts into a denominator comes from such a list.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from ..rational import RationalLike
from .poly import MultiPoly
from .trig import FULL, TrigContext, reduce


class DivisionByZeroPoly(ZeroDivisionError):
    """Division by a rational function whose numerator is identically zero."""


_s, _t = MultiPoly.var("s"), MultiPoly.var("t")
ONE_PLUS_S2 = 1 + _s**2
ONE_PLUS_T2 = 1 + _t**2
BASIC_FACTORS: tuple[MultiPoly, ...] = (ONE_PLUS_S2, ONE_PLUS_T2)


def _common_monomial(a: MultiPoly, b: MultiPoly) -> tuple[int, ...]:
    ma, mb = a.monomial_content(), b.monomial_content()
    return tuple(min(x, y) for x, y in zip(ma, mb))


def cancel_structured(
    num: MultiPoly,
    den: MultiPoly,
    factors: Iterable[MultiPoly] = BASIC_FACTORS,
) -> tuple[MultiPoly, MultiPoly]:
    """Cancel listed factors, the common monomial and rational content.

    Each factor is divided out of numerator and denominator together for as
    long as both divide exactly.  The returned pair represents the same
    function; the denominator's grlex-leading coefficient is positive.
    """
    if den.is_zero():
        raise DivisionByZeroPoly("denominator is identically zero")
    if num.is_zero():
        return MultiPoly.zero(), MultiPoly.const(1)
    for g in factors:
        if g.is_constant():
            continue
        while True:
            qn = num.divide_exact(g)
            if qn is None:
                break
            qd = den.divide_exact(g)
            if qd is None:
                break
            num, den = qn, qd
    mono = _common_monomial(num, den)
    if any(mono):
        num, den = num.divide_monomial(mono), den.divide_monomial(mono)
    cn, cd = num.content(), den.content()
    ratio = cn / cd
    num = num.scale(ratio.numerator / cn)
    den = den.scale(Fraction(ratio.denominator) / cd)
    if den.leading_term()[1] < 0:
        num, den = -num, -den
    return num, den


Operand = Union["RatFunc", MultiPoly, int, Fraction]


class RatFunc:
    """Immutable ``num / den`` with both parts kept in normal form.

    ``ctx`` selects the relations used to reduce every intermediate product
    and ``factors`` the structured cancellation list applied after each
    operation.
    """

    __slots__ = ("num", "den", "ctx", "factors")

    def __init__(
        self,
        num: Union[MultiPoly, RationalLike],
        den: Union[MultiPoly, RationalLike] = 1,
        ctx: Optional[TrigContext] = FULL,
        factors: Sequence[MultiPoly] = BASIC_FACTORS,
    ):
        num = num if isinstance(num, MultiPoly) else MultiPoly.const(num)
        den = den if isinstance(den, MultiPoly) else MultiPoly.const(den)
        if ctx is not None:
            num, den = reduce(num, ctx), reduce(den, ctx)
        if den.is_zero():
            raise DivisionByZeroPoly("denominator is identically zero")
        self.num, self.den = cancel_structured(num, den, factors)
        self.ctx = ctx
        self.factors = tuple(factors)

    def _make(self, num: MultiPoly, den: MultiPoly) -> "RatFunc":
        return RatFunc(num, den, self.ctx, self.factors)

    def _lift(self, other: Operand) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other, 1, self.ctx, self.factors)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatFunc(MultiPoly.const(other), 1, self.ctx, self.factors)
        raise TypeError(f"cannot combine RatFunc with {type(other).__name__}")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (RatFunc, MultiPoly, int, Fraction)):
            return NotImplemented
        o = self._lift(other)
        lhs = self.num * o.den
        rhs = o.num * self.den
        if self.ctx is not None:
            lhs, rhs = reduce(lhs, self.ctx), reduce(rhs, self.ctx)
        return lhs == rhs

    __hash__ = None  # equality is cross-multiplicative

    def __add__(self, other: Operand) -> "RatFunc":
        o = self._lift(other)
        if self.den == o.den:
            return self._make(self.num + o.num, self.den)
        return self._make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return self._make(-self.num, self.den)

    def __sub__(self, other: Operand) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other: Operand) -> "RatFunc":
        return self._lift(other) - self

    def __mul__(self, other: Operand) -> "RatFunc":
        o = self._lift(other)
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        # cancel across before multiplying out; exact polynomial equality only
        if n1 == d2:
            n1, d2 = MultiPoly.const(1), MultiPoly.const(1)
        if n2 == d1:
            n2, d1 = MultiPoly.const(1), MultiPoly.const(1)
        return self._make(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZeroPoly("reciprocal of the zero rational function")
        return self._make(self.den, self.num)

    def __truediv__(self, other: Operand) -> "RatFunc":
        o = self._lift(other)
        if o.num.is_zero():
            raise DivisionByZeroPoly("division by a rational function that is identically zero")
        return self * o.reciprocal()

    def __rtruediv__(self, other: Operand) -> "RatFunc":
        return self._lift(other) / self

    def derivative(self, name: str) -> "RatFunc":
        """Quotient rule: ``(n/d)' = (n' d - n d') / d^2``."""
        dn, dd = self.num.derivative(name), self.den.derivative(name)
        if dd.is_zero():
            return self._make(dn, self.den)
        return self._make(dn * self.den - self.num * dd, self.den * self.den)

    def cancel(self, factors: Iterable[MultiPoly]) -> "RatFunc":
        num, den = cancel_structured(self.num, self.den, factors)
        out = RatFunc.__new__(RatFunc)
        out.num, out.den, out.ctx, out.factors = num, den, self.ctx, self.factors
        return out

    def subs(self, assignment: Mapping[str, RationalLike]) -> "RatFunc":
        ctx = self.ctx.bind(assignment) if self.ctx is not None else None
        return RatFunc(self.num.subs(assignment), self.den.subs(assignment), ctx, self.factors)

    def eval(self, assignment: Mapping[str, RationalLike]) -> Fraction:
        d = self.den.eval(assignment)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.eval(assignment) / d

    def __repr__(self) -> str:
        return f"RatFunc(({self.num.to_text()[:60]}) / ({self.den.to_text()[:60]}))"
