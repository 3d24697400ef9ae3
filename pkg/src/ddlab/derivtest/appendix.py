"""Closed-form coefficient identities and the full verification run.

Each :class:`Identity` names a case, the monomial ``s^i t^j`` (or the whole
numerator), and the closed form it should equal.  Some identities concern a
sub-case reached from a parent case by fixing more parameters; for those the
parent numerator is computed and the extra values are substituted into the
extracted coefficient afterwards (``after``).

A closed form is accepted at the first tier that holds in some regime:

``exact``     computed coefficient equals the closed form;
``constant``  equal after scaling by a nonzero rational;
``cross``     ``computed * stated_pair == stated * computed_pair`` on the trig
              variety, for the paired identity, with both computed
              coefficients nonzero.

Every accepted tier is also confirmed by randomized identity testing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from ..geom import PairKind
from ..rational import format_rational
from ..sympoly import MultiPoly, TrigContext, identity_test_random, reduce
from .pipeline import (
    ALL_RELATIONS,
    CaseTag,
    CircleConfig,
    DegenerateRho,
    Regime,
    build_aligned_rho,
    classify_config,
    compute_numerator,
    derivative_test_numerator,
    effective_bindings,
    final_context,
    random_parameters,
)

s, t, p, q, r = (MultiPoly.var(n) for n in ("s", "t", "p", "q", "r"))
sa, ca, sb, cb, sg, cg = (MultiPoly.var(n) for n in ("sa", "ca", "sb", "cb", "sg", "cg"))
NORM_SQ = cb**2 * sa**2 + sb**2
_LINEAR = -2 * q * ca**2 + p * ca * sa - q * sa**2

TIERS = ("exact", "constant", "cross")
_F = Fraction


@dataclass(frozen=True)
class Identity:
    key: str
    case: CaseTag
    target: Optional[tuple[int, int]]
    stated: MultiPoly
    bindings: Mapping[str, Fraction] = field(default_factory=dict)
    after: Mapping[str, Fraction] = field(default_factory=dict)
    pair: Optional[str] = None
    note: str = ""

    def config(self) -> CircleConfig:
        return CircleConfig(self.case, self.bindings)

    def final_config(self) -> CircleConfig:
        return CircleConfig(self.case, {**self.bindings, **self.after})


_G = CaseTag
IDENTITIES: tuple[Identity, ...] = (
    Identity("generic:s5t1", _G.GENERIC, (5, 1),
             96 * r * (p + r * ca) * cb * sa**2 * (p * ca + q * sa) * sb * NORM_SQ, pair="generic:s5t9"),
    Identity("generic:s5t9", _G.GENERIC, (5, 9),
             96 * r * (p - r * ca) * cb * sa**2 * (p * ca + q * sa) * sb * NORM_SQ, pair="generic:s5t1"),
    Identity("generic:s3t9", _G.GENERIC, (3, 9),
             64 * r * (p - r * ca) * cb * sa * sb * NORM_SQ * _LINEAR, pair="generic:s3t1"),
    Identity("generic:s3t1", _G.GENERIC, (3, 1),
             64 * r * (p + r * ca) * cb * sa * sb * NORM_SQ * _LINEAR, pair="generic:s3t9"),
    Identity("yz:s2", _G.HPARALLEL_YZ, (2, 0), 4 * p * r, pair="yz:s3t4"),
    Identity("yz:s3t4", _G.HPARALLEL_YZ, (3, 4), 16 * q * (3 * p**2 - 8 * r**2), pair="yz:s2"),
    Identity("xaxis:s1", _G.XAXIS_LINES, (1, 0), -8 * p * (p + r) ** 2 * cg, pair="xaxis:s1t6"),
    Identity("xaxis:s1t6", _G.XAXIS_LINES, (1, 6), -8 * p * (p - r) ** 2 * cg, pair="xaxis:s1"),
    Identity("xaxis:s3t5", _G.XAXIS_LINES, (3, 5), -128 * q * (p - r) * r * cg * sg, pair="xaxis:s1"),
    Identity("xaxis-p0-q0:s6t2", _G.XAXIS_LINES, (6, 2), -4 * cg * sg**2,
             bindings={"p": _F(0), "q": _F(0)}),
    Identity("origin:t3", _G.CENTER_ORIGIN, (0, 3), -32 * ca**2 * cb * sa**2 * sb * NORM_SQ),
    Identity("origin-cosbeta0:s6t6", _G.CENTER_ORIGIN, (6, 6), -8 * ca * sa**2,
             bindings={"cb": _F(0), "sb": _F(1)}),
    Identity("cosbeta0:s5t3", _G.COS_BETA_ZERO, (5, 3), -128 * p * r * ca),
    Identity("cosbeta0-cosalpha0:t10", _G.COS_BETA_ZERO, (0, 10), -4 * p * r * sa**2,
             after={"ca": _F(0), "sa": _F(1)}),
    Identity("cosbeta0-p0:t9", _G.COS_BETA_ZERO, (0, 9), -16 * r**2 * q * ca * sa, after={"p": _F(0)}),
    Identity("cosalpha0:s3t3", _G.COS_ALPHA_ZERO, (3, 3), -384 * p * q * r * cb * sb),
)

NUMERATORS: tuple[Identity, ...] = (
    Identity("xz:numerator", _G.HPARALLEL_XZ, None, 4 * q * (1 + t**2) * (-1 + s**2)),
    Identity("cosalpha0-p0:numerator", _G.COS_ALPHA_ZERO_P0, None,
             4 * q * (1 + t**2) * (-cb + s**2 * cb + 2 * s * sa)),
    Identity("cosalpha0-q0:numerator", _G.COS_ALPHA_ZERO_Q0, None,
             -4 * p * r * (-1 + t**2) * (1 + s**2) * sb),
    Identity("cosbeta0-p0-cosalpha0:numerator", _G.COS_BETA_ZERO_P0, None, 8 * q * (1 + t**2) * s,
             bindings={"ca": _F(0), "sa": _F(1)}),
)

# Supplementary, not part of the stated table: the cosalpha0-p0 form with
# sin(beta) in the linear term, which is what the computation produces.
SUPPLEMENTARY: tuple[Identity, ...] = (
    Identity("cosalpha0-p0:numerator-sinbeta", _G.COS_ALPHA_ZERO_P0, None,
             4 * q * (1 + t**2) * (-cb + s**2 * cb + 2 * s * sb),
             note="sin(beta) in place of sin(alpha) in the linear term"),
)


# -- comparison ----------------------------------------------------------------


@dataclass(frozen=True)
class TierResult:
    regime: Regime
    tier: Optional[str]
    factor: Optional[Fraction]
    computed: MultiPoly
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.tier is not None

    def to_json(self) -> dict:
        return {
            "tier": self.tier,
            "factor": None if self.factor is None else format_rational(self.factor),
            "computed": self.computed.to_text(),
            "error": self.error,
        }


def _ratio(computed: MultiPoly, stated: MultiPoly) -> Optional[Fraction]:
    """``c`` with ``computed == c * stated``, or None."""
    if computed.is_zero() or stated.is_zero():
        return None
    c = computed.leading_term()[1] / stated.leading_term()[1]
    return c if computed == stated.scale(c) else None


class _Evaluator:
    """Caches numerators per (case, bindings, regime)."""

    def __init__(self, relations: frozenset[str], trials: int, seed: int):
        self.relations = relations
        self.trials = trials
        self.seed = seed
        self._numerators: dict = {}

    def numerator(self, ident: Identity, regime: Regime) -> MultiPoly:
        cfg = ident.config()
        key = (cfg.case, tuple(cfg.bindings.items()), regime)
        if key not in self._numerators:
            self._numerators[key] = compute_numerator(cfg, regime, self.relations)
        return self._numerators[key]

    def context(self, ident: Identity) -> TrigContext:
        return final_context(ident.final_config(), self.relations)

    def _specialize(self, ident: Identity, f: MultiPoly) -> MultiPoly:
        binds = effective_bindings(ident.final_config(), self.relations)
        return reduce(f.subs(binds), self.context(ident))

    def computed(self, ident: Identity, regime: Regime) -> MultiPoly:
        num = self.numerator(ident, regime)
        coeff = num if ident.target is None else num.coefficient(*ident.target)
        return self._specialize(ident, coeff)

    def stated(self, ident: Identity) -> MultiPoly:
        return self._specialize(ident, ident.stated)

    def _random_check(self, f: MultiPoly, g: MultiPoly, ident: Identity) -> bool:
        return identity_test_random(f, g, self.trials, seed=self.seed, ctx=self.context(ident))

    def compare(self, ident: Identity, regime: Regime, table: Mapping[str, Identity]) -> TierResult:
        try:
            computed = self.computed(ident, regime)
        except DegenerateRho as exc:
            return TierResult(regime, None, None, MultiPoly.zero(), str(exc))
        stated = self.stated(ident)
        if computed == stated and self._random_check(computed, stated, ident):
            return TierResult(regime, "exact", Fraction(1), computed)
        factor = _ratio(computed, stated)
        if factor is not None and self._random_check(computed, stated.scale(factor), ident):
            return TierResult(regime, "constant", factor, computed)
        if ident.pair is not None:
            partner = table[ident.pair]
            other = self.computed(partner, regime)
            if not computed.is_zero() and not other.is_zero():
                lhs = computed * self.stated(partner)
                rhs = stated * other
                if self._random_check(lhs, rhs, ident):
                    return TierResult(regime, "cross", None, computed)
        return TierResult(regime, None, None, computed)


@dataclass(frozen=True)
class IdentityOutcome:
    identity: Identity
    results: tuple[TierResult, ...]

    @property
    def best(self) -> Optional[TierResult]:
        passed = [res for res in self.results if res.passed]
        if not passed:
            return None
        return min(passed, key=lambda res: TIERS.index(res.tier))

    @property
    def passed(self) -> bool:
        return self.best is not None

    def to_json(self) -> dict:
        ident, best = self.identity, self.best
        return {
            "key": ident.key,
            "case": ident.case.value,
            "target": None if ident.target is None else list(ident.target),
            "bindings": {k: format_rational(v) for k, v in sorted(ident.bindings.items())},
            "after": {k: format_rational(v) for k, v in sorted(ident.after.items())},
            "stated": ident.stated.to_text(),
            "note": ident.note,
            "regimes": {res.regime.value: res.to_json() for res in self.results},
            "best_tier": None if best is None else best.tier,
            "best_regime": None if best is None else best.regime.value,
            "passed": self.passed,
        }


def check_identities(
    identities: Iterable[Identity],
    *,
    trials: int = 50,
    seed: int = 0,
    relations: Iterable[str] = ALL_RELATIONS,
) -> list[IdentityOutcome]:
    """Compare each identity under both regimes; see the module docstring."""
    identities = list(identities)
    table = {ident.key: ident for ident in IDENTITIES + NUMERATORS + SUPPLEMENTARY}
    table.update({ident.key: ident for ident in identities})
    ev = _Evaluator(frozenset(relations), trials, seed)
    return [
        IdentityOutcome(ident, tuple(ev.compare(ident, regime, table) for regime in Regime))
        for ident in identities
    ]


# -- controls and random bindings ------------------------------------------------


def positive_controls(relations: Iterable[str] = ALL_RELATIONS) -> list[dict]:
    """Aligned and perpendicular configurations, each expected to give 0."""
    relations = frozenset(relations)
    out = []
    aligned = derivative_test_numerator(build_aligned_rho())
    out.append({"name": "aligned:coaxial-chord", "kind": "aligned", "zero": aligned.is_zero()})
    for name, cfg, kind in (
        ("aligned:xy-p0", CircleConfig(CaseTag.HPARALLEL_XY), "aligned"),
        ("perpendicular:xz-q0", CircleConfig(CaseTag.HPARALLEL_XZ, {"q": 0}), "perpendicular"),
        ("perpendicular:cosalpha0-p0-q0", CircleConfig(CaseTag.COS_ALPHA_ZERO, {"p": 0, "q": 0}), "perpendicular"),
    ):
        num = compute_numerator(cfg, Regime.REDUCED, relations)
        out.append({"name": name, "kind": kind, "zero": num.is_zero()})
    return out


def random_generic_check(count: int, rng: random.Random, relations: Iterable[str] = ALL_RELATIONS) -> dict:
    """``count`` random generic bindings, each must give a nonzero numerator."""
    relations = frozenset(relations)
    base = CircleConfig(CaseTag.GENERIC)
    nonzero = rejected = 0
    failures = []
    while nonzero + len(failures) < count:
        cfg = base.with_bindings(random_parameters(rng, base))
        if classify_config(cfg) is not PairKind.GENERIC:
            rejected += 1
            continue
        try:
            num = compute_numerator(cfg, Regime.REDUCED, relations)
        except DegenerateRho:
            rejected += 1
            continue
        if num.is_zero():
            failures.append(cfg.to_json())
        else:
            nonzero += 1
    return {"requested": count, "nonzero": nonzero, "rejected": rejected, "failures": failures,
            "passed": not failures}


def random_perpendicular_check(count: int, rng: random.Random, relations: Iterable[str] = ALL_RELATIONS) -> dict:
    """``count`` random perpendicular bindings, alternating two families."""
    relations = frozenset(relations)
    families = (CircleConfig(CaseTag.HPARALLEL_XZ, {"q": 0}),
                CircleConfig(CaseTag.COS_ALPHA_ZERO, {"p": 0, "q": 0}))
    zero = 0
    failures = []
    for i in range(count):
        base = families[i % 2]
        cfg = base.with_bindings(random_parameters(rng, base))
        kind = classify_config(cfg)
        num = compute_numerator(cfg, Regime.REDUCED, relations)
        if kind is PairKind.PERPENDICULAR and num.is_zero():
            zero += 1
        else:
            failures.append({**cfg.to_json(), "classified": kind.value})
    return {"requested": count, "zero": zero, "failures": failures, "passed": not failures}


def rewrite_check() -> dict:
    """Substituting ``p*ca -> -q*sa`` into the shared linear factor leaves ``-2q``."""
    rewritten = reduce(_LINEAR.rewrite_monomial(p * ca, -q * sa), TrigContext.full())
    return {"input": _LINEAR.to_text(), "result": rewritten.to_text(), "passed": rewritten == -2 * q}


def verify_appendix_b(
    trials: int = 50,
    seed: int = 0,
    relations: Iterable[str] = ALL_RELATIONS,
    generic_count: int = 100,
    perpendicular_count: int = 20,
) -> dict:
    """Run every identity, control and random check; JSON-ready and deterministic."""
    relations = frozenset(relations)
    rng = random.Random(seed)
    identities = check_identities(IDENTITIES, trials=trials, seed=seed, relations=relations)
    numerators = check_identities(NUMERATORS, trials=trials, seed=seed, relations=relations)
    supplementary = check_identities(SUPPLEMENTARY, trials=trials, seed=seed, relations=relations)
    controls = positive_controls(relations)
    generic = random_generic_check(generic_count, rng, relations)
    perpendicular = random_perpendicular_check(perpendicular_count, rng, relations)
    rewrite = rewrite_check()
    all_passed = (
        all(o.passed for o in identities)
        and all(o.passed for o in numerators)
        and all(c["zero"] for c in controls)
        and generic["passed"]
        and perpendicular["passed"]
        and rewrite["passed"]
    )
    return {
        "trials": trials,
        "seed": seed,
        "relations": sorted(relations),
        "identities": [o.to_json() for o in identities],
        "numerators": [o.to_json() for o in numerators],
        "supplementary": [o.to_json() for o in supplementary],
        "controls": controls,
        "generic_random": generic,
        "perpendicular_random": perpendicular,
        "rewrite_check": rewrite,
        "failed": [o.identity.key for o in identities + numerators if not o.passed],
        "all_passed": all_passed,
    }
