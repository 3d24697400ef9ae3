"""The derivative test for a pair of circles, computed exactly.

The first circle is the unit circle in ``z = 0``, parametrized by
``gamma1(s) = (2s, 1 - s^2, 0) / (1 + s^2)``.  The second has center ``c``,
radius ``r`` and spans the orthogonal directions ``V1`` and ``V2 / |V2|``:
``gamma2(t) = c + r*(1 - t^2)/(1 + t^2)*V1 + r*2t/(1 + t^2)*V2/|V2|``.
``rho(s, t)`` is the squared distance between the two points.

The test function is ``g = d^2/(ds dt) log(rho_t / rho_s)``.  Writing
``A`` and ``B`` for the numerators of ``rho_t`` and ``rho_s``, every factor
of the two denominators depends on ``s`` alone or on ``t`` alone, so

    g = L(A)/A^2 - L(B)/B^2,    L(X) = X_st*X - X_s*X_t.

Factors of ``A`` or ``B`` that are free of ``s`` or free of ``t`` drop out of
``g`` as well and are removed first; the numerator returned is
``B^2*L(A) - A^2*L(B)``.  The same function is also available through the
quotient-rule route ``d/ds(h_t/h)`` with ``h = rho_t/rho_s`` for cross-checks.

The norm ``|V2|`` is the symbol ``w``.  Two regimes decide when the
trigonometric relations are applied:

``reduced``
    all relations at every step, so the computation lives in the quotient
    ring and ``g`` is cancelled as a function on the trig variety;
``deferred``
    sines and cosines stay independent symbols, ``w^2`` is the literal sum of
    squares of ``V2``, and the relations are applied only to the final
    numerator.  Cancellation then only sees common factors that are visible
    without the relations.

Both give a numerator that vanishes exactly when ``g`` does.  They can differ
by factors that are invisible to zero-ness but matter when individual
coefficients are compared with closed forms.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from ..geom import Circle3, PairKind, Plane3, Point3, classify_pair, cross, dot, unit_circle_xy
from ..rational import RationalLike, format_rational, half_angle, rational_sqrt, to_rational
from ..sympoly import MultiPoly, RatFunc, TrigContext, reduce
from ..sympoly.pit import fold_w
from ..sympoly.trig import RELATION_VARS

ALL_RELATIONS = frozenset(RELATION_VARS)

_s, _t, _p, _q, _r = (MultiPoly.var(n) for n in ("s", "t", "p", "q", "r"))
_sa, _ca, _sb, _cb, _sg, _cg, _w = (MultiPoly.var(n) for n in ("sa", "ca", "sb", "cb", "sg", "cg", "w"))
_ZERO, _ONE = MultiPoly.zero(), MultiPoly.const(1)
ONE_PLUS_S2 = 1 + _s**2
ONE_PLUS_T2 = 1 + _t**2


class DegenerateRho(ValueError):
    """``rho_s`` or ``rho_t`` vanishes identically (for example ``r = 0``)."""


class Regime(enum.Enum):
    REDUCED = "reduced"
    DEFERRED = "deferred"


class CaseTag(enum.Enum):
    GENERIC = "generic"
    HPARALLEL_XY = "xy"
    HPARALLEL_XZ = "xz"
    HPARALLEL_YZ = "yz"
    XAXIS_LINES = "xaxis"
    CENTER_ORIGIN = "origin"
    COS_BETA_ZERO = "cosbeta0"
    COS_BETA_ZERO_P0 = "cosbeta0-p0"
    COS_ALPHA_ZERO = "cosalpha0"
    COS_ALPHA_ZERO_P0 = "cosalpha0-p0"
    COS_ALPHA_ZERO_Q0 = "cosalpha0-q0"


Vec = tuple[MultiPoly, MultiPoly, MultiPoly]


@dataclass(frozen=True)
class Frame:
    """``V1``, the unnormalized ``V2`` and the center of the second circle."""

    first: Vec
    second: Vec
    center: Vec
    normalized: bool

    def norm_sq(self) -> MultiPoly:
        return sum((v * v for v in self.second), _ZERO)

    def subs(self, assignment: Mapping[str, Fraction]) -> "Frame":
        def sub(vec: Vec) -> Vec:
            return tuple(v.subs(assignment) for v in vec)

        return Frame(sub(self.first), sub(self.second), sub(self.center), self.normalized)


_CENTER = (_p, _ZERO, _q)
_GENERIC_FRAME = Frame((_ca, _ZERO, _sa), (_sa**2 * _cb, _sb, -_sa * _ca * _cb), _CENTER, True)
_ALPHA0_FRAME = Frame((_ZERO, _ZERO, _ONE), (_cb, _sb, _ZERO), _CENTER, False)
_BETA0_FRAME = Frame((_ca, _ZERO, _sa), (_ZERO, _ONE, _ZERO), _CENTER, False)

FRAMES: dict[CaseTag, Frame] = {
    CaseTag.GENERIC: _GENERIC_FRAME,
    CaseTag.CENTER_ORIGIN: _GENERIC_FRAME,
    CaseTag.HPARALLEL_XY: Frame((_ONE, _ZERO, _ZERO), (_ZERO, _ONE, _ZERO), _CENTER, False),
    CaseTag.HPARALLEL_XZ: Frame((_ONE, _ZERO, _ZERO), (_ZERO, _ZERO, _ONE), _CENTER, False),
    # V1 along z and V2 along y: the same circle as the (y, z) ordering, with
    # t running the other way round.  See the decisions ledger.
    CaseTag.HPARALLEL_YZ: Frame((_ZERO, _ZERO, _ONE), (_ZERO, _ONE, _ZERO), _CENTER, False),
    CaseTag.XAXIS_LINES: Frame((_ONE, _ZERO, _ZERO), (_ZERO, _cg, _sg), _CENTER, False),
    CaseTag.COS_BETA_ZERO: _BETA0_FRAME,
    CaseTag.COS_BETA_ZERO_P0: _BETA0_FRAME,
    CaseTag.COS_ALPHA_ZERO: _ALPHA0_FRAME,
    CaseTag.COS_ALPHA_ZERO_P0: _ALPHA0_FRAME,
    CaseTag.COS_ALPHA_ZERO_Q0: _ALPHA0_FRAME,
}

_F = Fraction
FORCED: dict[CaseTag, dict[str, Fraction]] = {
    CaseTag.GENERIC: {},
    CaseTag.CENTER_ORIGIN: {"p": _F(0), "q": _F(0)},
    CaseTag.HPARALLEL_XY: {"p": _F(0)},
    CaseTag.HPARALLEL_XZ: {},
    CaseTag.HPARALLEL_YZ: {},
    CaseTag.XAXIS_LINES: {},
    CaseTag.COS_BETA_ZERO: {"cb": _F(0), "sb": _F(1)},
    CaseTag.COS_BETA_ZERO_P0: {"cb": _F(0), "sb": _F(1), "p": _F(0)},
    CaseTag.COS_ALPHA_ZERO: {"ca": _F(0), "sa": _F(1)},
    CaseTag.COS_ALPHA_ZERO_P0: {"ca": _F(0), "sa": _F(1), "p": _F(0)},
    CaseTag.COS_ALPHA_ZERO_Q0: {"ca": _F(0), "sa": _F(1), "q": _F(0)},
}

_TRIG_PAIRS = (("sa", "ca"), ("sb", "cb"), ("sg", "cg"))
_BINDABLE = {"p", "q", "r", "sa", "ca", "sb", "cb", "sg", "cg"}


class ConfigError(ValueError):
    """Invalid case or binding combination."""


@dataclass(frozen=True)
class CircleConfig:
    """A case of the second circle's frame plus rational parameter bindings.

    Unbound parameters stay symbolic.  Trig values must come in exact
    (sin, cos) pairs on the unit circle; :meth:`from_half_angles` builds them
    from half-angle tangents.  Case-specific bindings (for example
    ``p = q = 0`` for ``origin``) are filled in automatically.
    """

    case: CaseTag
    bindings: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        case = CaseTag(self.case)
        object.__setattr__(self, "case", case)
        given = {k: to_rational(v) for k, v in self.bindings.items()}
        unknown = set(given) - _BINDABLE
        if unknown:
            raise ConfigError(f"cannot bind {sorted(unknown)}")
        for name, value in FORCED[case].items():
            if name in given and given[name] != value:
                raise ConfigError(f"case {case.value} requires {name} = {value}")
            given[name] = value
        if "r" in given and given["r"] <= 0:
            raise ConfigError("r must be positive")
        for sin_name, cos_name in _TRIG_PAIRS:
            has_sin, has_cos = sin_name in given, cos_name in given
            if has_sin != has_cos:
                raise ConfigError(f"{sin_name} and {cos_name} must be bound together")
            if has_sin:
                if given[sin_name] ** 2 + given[cos_name] ** 2 != 1:
                    raise ConfigError(f"({sin_name}, {cos_name}) is not on the unit circle")
        for sin_name in ("sa", "sb"):
            # both angles lie strictly between 0 and pi
            if sin_name in given and given[sin_name] <= 0:
                raise ConfigError(f"{sin_name} must be positive")
        object.__setattr__(self, "bindings", dict(sorted(given.items())))

    @classmethod
    def from_half_angles(
        cls,
        case: CaseTag | str,
        *,
        p: Optional[RationalLike] = None,
        q: Optional[RationalLike] = None,
        r: Optional[RationalLike] = None,
        alpha: Optional[RationalLike] = None,
        beta: Optional[RationalLike] = None,
        gamma: Optional[RationalLike] = None,
    ) -> "CircleConfig":
        """Bind ``alpha``, ``beta``, ``gamma`` through their half-angle tangents."""
        binds: dict[str, Fraction] = {}
        for name, value in (("p", p), ("q", q), ("r", r)):
            if value is not None:
                binds[name] = to_rational(value)
        for (sin_name, cos_name), u in zip(_TRIG_PAIRS, (alpha, beta, gamma)):
            if u is not None:
                binds[sin_name], binds[cos_name] = half_angle(u)
        return cls(CaseTag(case), binds)

    def with_bindings(self, extra: Mapping[str, RationalLike]) -> "CircleConfig":
        merged = dict(self.bindings)
        merged.update({k: to_rational(v) for k, v in extra.items()})
        return CircleConfig(self.case, merged)

    @property
    def frame(self) -> Frame:
        return FRAMES[self.case]

    def norm_value(self) -> Optional[Fraction]:
        """``|V2|`` when it is a bound rational, else None."""
        if not self.frame.normalized:
            return Fraction(1)
        sq = self.frame.norm_sq().subs(self.bindings)
        if not sq.is_constant():
            return None
        return rational_sqrt(sq.constant_value())

    def circles(self) -> tuple[Circle3, Circle3]:
        """Both circles as exact geometry; every parameter must be bound."""
        frame = self.frame.subs(self.bindings)
        vals = []
        for vec in (frame.first, frame.second, frame.center):
            if not all(v.is_constant() for v in vec):
                raise ConfigError("circles() needs every parameter bound")
            vals.append(tuple(v.constant_value() for v in vec))
        v1, v2, center = vals
        if "r" not in self.bindings:
            raise ConfigError("circles() needs r bound")
        normal = cross(v1, v2)
        c = Point3(*center)
        plane = Plane3(normal, dot(normal, center))
        return unit_circle_xy(), Circle3(c, self.bindings["r"] ** 2, plane)

    def to_json(self) -> dict:
        return {"case": self.case.value, "bindings": {k: format_rational(v) for k, v in self.bindings.items()}}


def pipeline_context(
    cfg: CircleConfig, regime: Regime = Regime.REDUCED, relations: Iterable[str] = ALL_RELATIONS
) -> TrigContext:
    """Relations in force while ``rho`` is built and differentiated."""
    relations = frozenset(relations)
    if regime is Regime.REDUCED:
        ctx = TrigContext.with_active(relations)
    elif "w" in relations and cfg.frame.normalized:
        ctx = TrigContext.norm_only(cfg.frame.norm_sq())
    else:
        ctx = TrigContext.empty()
    return ctx.bind(effective_bindings(cfg, relations))


def final_context(cfg: CircleConfig, relations: Iterable[str] = ALL_RELATIONS) -> TrigContext:
    """Relations used to bring a finished numerator to normal form."""
    return TrigContext.with_active(frozenset(relations)).bind(effective_bindings(cfg, relations))


def effective_bindings(cfg: CircleConfig, relations: Iterable[str] = ALL_RELATIONS) -> dict[str, Fraction]:
    """``cfg.bindings`` plus ``w`` when the bound norm is rational."""
    binds = dict(cfg.bindings)
    if "w" in frozenset(relations):
        w0 = cfg.norm_value()
        if w0 is not None:
            binds["w"] = w0
    return binds


def build_rho(
    cfg: CircleConfig, regime: Regime = Regime.REDUCED, relations: Iterable[str] = ALL_RELATIONS
) -> RatFunc:
    """``rho(s, t)`` as a rational function in normal form for ``regime``.

    Multiplying each coordinate difference by ``|V2|^2`` turns ``V2/|V2|``
    into ``V2*w``, so the only denominators are powers of ``1 + s^2``,
    ``1 + t^2`` and the squared norm.
    """
    relations = frozenset(relations)
    ctx = pipeline_context(cfg, regime, relations)
    binds = effective_bindings(cfg, relations)
    frame = cfg.frame.subs(binds)
    s2, t2 = ONE_PLUS_S2, ONE_PLUS_T2
    r = _r.subs(binds)
    first_point = (2 * _s, 1 - _s**2, _ZERO)
    if frame.normalized:
        norm_sq = reduce(frame.norm_sq(), ctx) if regime is Regime.REDUCED else frame.norm_sq()
        w = _w.subs(binds)
    else:
        norm_sq, w = _ONE, _ONE
    total = _ZERO
    for i in range(3):
        d = (
            first_point[i] * t2 * norm_sq
            - frame.center[i] * s2 * t2 * norm_sq
            - s2 * (r * (1 - _t**2) * frame.first[i] * norm_sq + 2 * r * _t * w * frame.second[i])
        )
        total = total + reduce(d * d, ctx)
    den = s2**2 * t2**2 * norm_sq**2
    factors = tuple(f for f in (s2, t2, norm_sq) if not f.is_constant())
    return RatFunc(reduce(total, ctx), den, ctx, factors)


def build_aligned_rho(r1: Optional[RationalLike] = None) -> RatFunc:
    """Chord-length ``rho`` for coaxial circles about the z-axis.

    The first circle has radius ``r1`` (symbol ``p`` when omitted) in
    ``z = 0``; the second has radius ``r`` in ``z = q``.  With the angles
    ``theta1, theta2`` of the two points,
    ``rho = r1^2 + r^2 + q^2 - 2*r1*r*cos(theta1 - theta2)`` and the cosine is
    expanded through the half-angle forms of ``s`` and ``t``.
    """
    radius = _p if r1 is None else MultiPoly.const(to_rational(r1))
    s2, t2 = ONE_PLUS_S2, ONE_PLUS_T2
    sin1, cos1 = 2 * _s, 1 - _s**2  # over 1 + s^2
    cos2, sin2 = 1 - _t**2, 2 * _t  # over 1 + t^2
    cos_diff = cos1 * cos2 + sin1 * sin2  # over (1 + s^2)(1 + t^2)
    num = (radius**2 + _r**2 + _q**2) * s2 * t2 - 2 * radius * _r * cos_diff
    return RatFunc(num, s2 * t2, TrigContext.full(), (s2, t2))


# -- numerator of g ------------------------------------------------------------


def _primitive(x: MultiPoly) -> MultiPoly:
    mono = x.monomial_content()
    if any(mono):
        x = x.divide_monomial(mono)
    x = x.scale(1 / x.content())
    if x.leading_term()[1] < 0:
        x = -x
    return x


def _free_content(x: MultiPoly, var: str) -> MultiPoly:
    """A factor of ``x`` that does not involve ``var``, or 1.

    Heuristic: the coefficient (as a polynomial in ``var``) with the fewest
    terms is taken as the candidate and accepted when it divides every other
    coefficient exactly.  A miss only leaves a harmless factor in place.
    """
    i = 0 if var == "s" else 1
    groups: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for mono, c in x.items():
        rest = list(mono)
        e, rest[i] = rest[i], 0
        groups.setdefault(e, {})[tuple(rest)] = c
    if len(groups) <= 1:
        return x if not x.is_constant() else _ONE
    polys = [MultiPoly(g) for g in groups.values()]
    cand = _primitive(min(polys, key=len))
    if cand.is_constant():
        return _ONE
    if all(g.divide_exact(cand) is not None for g in polys):
        return cand
    return _ONE


def strip_separable(x: MultiPoly, factors: Sequence[MultiPoly], ctx: TrigContext) -> MultiPoly:
    """Remove factors that depend on ``s`` only or are free of ``s`` (same for t).

    Such factors ``f`` have ``d^2 log f / ds dt = 0``, so they never change
    ``g``.  Removed: rational and monomial content, the listed factors, a
    unit factor ``w`` of the norm, and content found by :func:`_free_content`.
    """
    if x.is_zero():
        raise DegenerateRho("zero polynomial has no separable part")
    x = _primitive(x)
    trial = [f for f in factors if not f.is_constant()]
    norm_sq = ctx.rules.get("w")
    strip_w = norm_sq is not None and not norm_sq.is_constant()
    changed = True
    while changed:
        changed = False
        for f in trial:
            while True:
                quotient = x.divide_exact(f)
                if quotient is None:
                    break
                x, changed = _primitive(quotient), True
        if strip_w and "w" in x.variables():
            # x = w*y  <=>  x*w = |V2|^2 * y
            quotient = reduce(x * _w, ctx).divide_exact(norm_sq)
            if quotient is not None:
                x, changed = _primitive(quotient), True
        for var in ("s", "t"):
            content = _free_content(x, var)
            if not content.is_constant():
                x, changed = _primitive(x.divide_exact(content)), True
    return x


def _mixed_log_numerator(x: MultiPoly, ctx: TrigContext) -> MultiPoly:
    xs, xt = x.derivative("s"), x.derivative("t")
    return reduce(xs.derivative("t") * x - xs * xt, ctx)


@dataclass(frozen=True)
class TestFunction:
    """``g = numerator / denominator`` with both parts in normal form."""

    numerator: MultiPoly
    denominator: MultiPoly
    ctx: TrigContext


def derivative_test_parts(rho: RatFunc, final_ctx: Optional[TrigContext] = None) -> TestFunction:
    """``g`` for ``rho`` as ``(B^2 L(A) - A^2 L(B)) / (A^2 B^2)`` after stripping."""
    ctx = rho.ctx if rho.ctx is not None else TrigContext.empty()
    rho_t, rho_s = rho.derivative("t"), rho.derivative("s")
    if rho_t.is_zero() or rho_s.is_zero():
        raise DegenerateRho("rho_s or rho_t vanishes identically")
    a = strip_separable(rho_t.num, rho.factors, ctx)
    b = strip_separable(rho_s.num, rho.factors, ctx)
    a2, b2 = reduce(a * a, ctx), reduce(b * b, ctx)
    num = reduce(b2 * _mixed_log_numerator(a, ctx) - a2 * _mixed_log_numerator(b, ctx), ctx)
    den = reduce(a2 * b2, ctx)
    out_ctx = ctx
    if final_ctx is not None:
        num, den, out_ctx = reduce(num, final_ctx), reduce(den, final_ctx), final_ctx
    return TestFunction(num, den, out_ctx)


def normalize(f: MultiPoly) -> MultiPoly:
    """Divide out rational content and make the leading coefficient positive."""
    if f.is_zero():
        return f
    f = f.scale(1 / f.content())
    return -f if f.leading_term()[1] < 0 else f


def derivative_test_numerator(rho: RatFunc, final_ctx: Optional[TrigContext] = None) -> MultiPoly:
    """Numerator of ``g``; identically zero exactly when ``g`` is.

    Parameter factors of the numerator are kept: they are what makes the
    numerator vanish for special parameter values.
    """
    return normalize(derivative_test_parts(rho, final_ctx).numerator)


def derivative_test_quotient_rule(rho: RatFunc, order: str = "st") -> RatFunc:
    """``g`` through ``RatFunc`` arithmetic only.

    ``order="st"`` computes ``d/ds(h_t/h)`` with ``h = rho_t/rho_s``;
    ``order="ts"`` computes ``d/dt(k_s/k)`` with ``k = rho_s/rho_t``, which is
    ``-g``.  The structured factor list is extended by both numerators.
    """
    rho_t, rho_s = rho.derivative("t"), rho.derivative("s")
    if rho_t.is_zero() or rho_s.is_zero():
        raise DegenerateRho("rho_s or rho_t vanishes identically")
    factors = tuple(rho.factors) + (rho_t.num, rho_s.num)
    rho_t, rho_s = rho_t.cancel(factors), rho_s.cancel(factors)
    rho_t = RatFunc(rho_t.num, rho_t.den, rho.ctx, factors)
    rho_s = RatFunc(rho_s.num, rho_s.den, rho.ctx, factors)
    if order == "st":
        h = rho_t / rho_s
        return (h.derivative("t") / h).derivative("s")
    if order == "ts":
        k = rho_s / rho_t
        return (k.derivative("s") / k).derivative("t")
    raise ValueError("order must be 'st' or 'ts'")


def is_identically_zero(numerator: MultiPoly) -> bool:
    """True iff both parts of ``numerator = A + B*w`` vanish."""
    a, b = numerator.split_w()
    return a.is_zero() and b.is_zero()


@dataclass(frozen=True)
class DerivTestReport:
    config: CircleConfig
    regime: Regime
    numerator: MultiPoly
    coefficients: Mapping[tuple[int, int], MultiPoly]

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    @property
    def term_count(self) -> int:
        return len(self.numerator)

    @property
    def verdict(self) -> str:
        return "ZeroEverywhere" if self.is_zero else "NonzeroGeneric"

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "regime": self.regime.value,
            "is_zero": self.is_zero,
            "term_count": self.term_count,
            "verdict": self.verdict,
            "coefficients": [
                {"s_deg": i, "t_deg": j, "poly": c.to_text()} for (i, j), c in self.coefficients.items()
            ],
        }


def compute_numerator(
    cfg: CircleConfig, regime: Regime = Regime.REDUCED, relations: Iterable[str] = ALL_RELATIONS
) -> MultiPoly:
    """Build ``rho`` for ``cfg`` and return the numerator of ``g`` in normal form."""
    relations = frozenset(relations)
    rho = build_rho(cfg, regime, relations)
    final = final_context(cfg, relations) if regime is Regime.DEFERRED else None
    return derivative_test_numerator(rho, final)


def coefficient_report(
    cfg: CircleConfig,
    targets: Optional[Iterable[tuple[int, int]]] = None,
    regime: Regime = Regime.REDUCED,
    relations: Iterable[str] = ALL_RELATIONS,
) -> DerivTestReport:
    """Numerator of ``g`` and its coefficients at ``targets`` (default: all)."""
    num = compute_numerator(cfg, regime, relations)
    support = num.st_support() if targets is None else list(targets)
    coeffs = {ij: num.coefficient(*ij) for ij in support}
    return DerivTestReport(cfg, regime, num, coeffs)


# -- cross-validation ---------------------------------------------------------


def _fold_value(f: MultiPoly, point: Mapping[str, Fraction], ctx: TrigContext) -> tuple[Fraction, Fraction]:
    if "w" in point:
        f = f.subs({"w": point["w"]})
    return fold_w(f, dict(point), ctx)


def _times(x: tuple[Fraction, Fraction], y: tuple[Fraction, Fraction], w_sq: Fraction) -> tuple[Fraction, Fraction]:
    return x[0] * y[0] + x[1] * y[1] * w_sq, x[0] * y[1] + x[1] * y[0]


def random_parameters(rng: random.Random, cfg: CircleConfig, bound: int = 30) -> dict[str, Fraction]:
    """Random rational values for every unbound parameter of ``cfg``.

    Trig pairs come from half-angle tangents; ``r`` and the sines are positive.
    """
    out: dict[str, Fraction] = {}

    def small(positive: bool = False) -> Fraction:
        num = rng.randint(1, bound)
        if not positive and rng.random() < 0.5:
            num = -num
        return Fraction(num, rng.randint(1, bound))

    for name in ("p", "q", "r"):
        if name not in cfg.bindings:
            out[name] = small(positive=name == "r")
    for sin_name, cos_name in _TRIG_PAIRS:
        if sin_name not in cfg.bindings:
            u = small(positive=True)
            while u == 1:
                u = small(positive=True)
            out[sin_name], out[cos_name] = half_angle(u)
    return out


def cross_validate(
    cfg: CircleConfig,
    trials: int = 50,
    *,
    seed: int = 0,
    regime: Regime = Regime.REDUCED,
) -> bool:
    """Symbolic ``g`` against ``g`` computed after binding all parameters first.

    For each trial the parameters are drawn at random, the numeric-first
    pipeline is run, and both versions of ``g`` are compared at a random
    ``(s, t)`` by cross-multiplication in ``Q(w)``.
    """
    rng = random.Random(seed)
    symbolic = build_rho(cfg, regime)
    final = final_context(cfg) if regime is Regime.DEFERRED else None
    g_sym = derivative_test_parts(symbolic, final)
    for _ in range(trials):
        params = random_parameters(rng, cfg)
        bound_cfg = cfg.with_bindings(params)
        g_num = derivative_test_parts(build_rho(bound_cfg, Regime.REDUCED))
        ctx = final_context(bound_cfg)
        point = dict(params)
        point["s"] = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        point["t"] = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        w0 = bound_cfg.norm_value()
        if w0 is not None and cfg.frame.normalized:
            point["w"] = w0
        w_sq = ctx.rules["w"].constant_value() if "w" in ctx.rules else Fraction(0)
        sym_ctx = g_sym.ctx.bind(params)
        ns = _fold_value(g_sym.numerator, point, sym_ctx)
        ds = _fold_value(g_sym.denominator, point, sym_ctx)
        nn = _fold_value(g_num.numerator, point, ctx)
        dn = _fold_value(g_num.denominator, point, ctx)
        if ds == (0, 0) or dn == (0, 0):
            continue
        if _times(ns, dn, w_sq) != _times(nn, ds, w_sq):
            return False
    return True


def classify_config(cfg: CircleConfig) -> PairKind:
    c1, c2 = cfg.circles()
    return classify_pair(c1, c2)


__all__ = [
    "ALL_RELATIONS",
    "CaseTag",
    "CircleConfig",
    "ConfigError",
    "DegenerateRho",
    "DerivTestReport",
    "FORCED",
    "FRAMES",
    "Frame",
    "Regime",
    "TestFunction",
    "build_aligned_rho",
    "build_rho",
    "classify_config",
    "coefficient_report",
    "compute_numerator",
    "cross_validate",
    "derivative_test_numerator",
    "derivative_test_parts",
    "derivative_test_quotient_rule",
    "effective_bindings",
    "final_context",
    "is_identically_zero",
    "normalize",
    "pipeline_context",
    "random_parameters",
    "strip_separable",
]
