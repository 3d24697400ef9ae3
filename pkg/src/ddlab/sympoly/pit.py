"""Randomized polynomial identity testing on the trigonometric variety.

Points are drawn so that every active relation holds exactly: each (sin, cos)
pair comes from the half-angle map of a random rational, and ``w`` is never
given a value at all.  After substituting everything else, the difference is
a polynomial in ``w`` alone.  It is folded modulo ``w^2 - W0`` and both the
constant part and the ``w`` part must vanish, which checks both signs of the
square root at once.

Numerators and denominators are uniform in ``[1, 2^31)``.  For total degree
at most 64, each trial misses a nonzero difference with probability at most
``64 / 2^31 = 2^-25``, so 50 independent trials fail with probability far
below ``2^-30``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .poly import MultiPoly, VARIABLES
from .trig import FULL, TrigContext

SAMPLE_BOUND = 2**31
_TRIG_PAIRS = (("sa", "ca"), ("sb", "cb"), ("sg", "cg"))


def random_rational(rng: random.Random, bound: int = SAMPLE_BOUND) -> Fraction:
    num = rng.randrange(1, bound)
    den = rng.randrange(1, bound)
    return Fraction(num if rng.random() < 0.5 else -num, den)


def sample_point(
    rng: random.Random,
    ctx: TrigContext = FULL,
    bound: int = SAMPLE_BOUND,
) -> dict[str, Fraction]:
    """A random rational point respecting every trig relation in ``ctx``.

    ``w`` is left out when its relation is active; see :func:`fold_w`.
    """
    point: dict[str, Fraction] = {}
    for sin_name, cos_name in _TRIG_PAIRS:
        if cos_name in ctx.rules:
            u = random_rational(rng, bound)
            d = 1 + u * u
            point[sin_name], point[cos_name] = 2 * u / d, (1 - u * u) / d
    for name in VARIABLES:
        if name in point or (name == "w" and "w" in ctx.rules):
            continue
        point[name] = random_rational(rng, bound)
    return point


def fold_w(f: MultiPoly, point: dict[str, Fraction], ctx: TrigContext) -> tuple[Fraction, Fraction]:
    """Value of ``f`` at ``point`` as ``a + b*w`` with ``w^2 = W0``."""
    # w is an ordinary variable when its relation is inactive
    keep_w = "w" not in ctx.rules
    rest = {k: v for k, v in point.items() if (keep_w or k != "w") and k in f.variables()}
    g = f.subs(rest)
    if "w" not in g.variables():
        return g.constant_value() if g else Fraction(0), Fraction(0)
    if "w" not in ctx.rules:
        raise ValueError("w appears but no value or relation was supplied for it")
    rule = ctx.rules["w"]
    w0 = rule.subs({k: v for k, v in point.items() if k in rule.variables()}).constant_value()
    a = b = Fraction(0)
    for mono, c in g.items():
        e = mono[-1]
        term = c * w0 ** (e // 2)
        if e % 2:
            b += term
        else:
            a += term
    return a, b


def identity_test_random(
    f: MultiPoly,
    g: MultiPoly,
    trials: int = 50,
    *,
    seed: Optional[int] = 0,
    rng: Optional[random.Random] = None,
    ctx: TrigContext = FULL,
) -> bool:
    """Schwartz-Zippel check that ``f == g`` on the variety cut out by ``ctx``.

    Returns False at the first sample point where the two sides differ.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = rng if rng is not None else random.Random(seed)
    diff = f - g
    if diff.is_zero():
        return True
    for _ in range(trials):
        point = sample_point(rng, ctx)
        if fold_w(diff, point, ctx) != (0, 0):
            return False
    return True
