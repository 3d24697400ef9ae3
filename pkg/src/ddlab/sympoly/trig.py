"""Normal form modulo the trigonometric and norm relations.

The quotient ring is generated by the relations

    ca^2 = 1 - sa^2,   cb^2 = 1 - sb^2,   cg^2 = 1 - sg^2,
    w^2  = sa^2*cb^2 + sb^2          (w is the norm of the second plane vector)

Their leading monomials ca^2, cb^2, cg^2, w^2 are pairwise coprime, so the
relations already form a Groebner basis and rewriting every such square gives a
unique normal form: exponents of ca, cb, cg and w all end up below 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from ..rational import RationalLike
from .poly import INDEX, MultiPoly, _MASK, _SHIFT, _unit

RELATION_VARS = ("ca", "cb", "cg", "w")

_sa, _sb, _sg, _cb = (MultiPoly.var(n) for n in ("sa", "sb", "sg", "cb"))
DEFAULT_RULES: dict[str, MultiPoly] = {
    "ca": 1 - _sa**2,
    "cb": 1 - _sb**2,
    "cg": 1 - _sg**2,
    "w": _sa**2 * _cb**2 + _sb**2,
}


def norm_sq_poly() -> MultiPoly:
    """``sa^2*cb^2 + sb^2``: the squared norm of the orthogonalized plane vector."""
    return DEFAULT_RULES["w"]


@dataclass(frozen=True)
class TrigContext:
    """Active rewriting rules ``var^2 -> rhs``.

    ``rules`` maps a relation variable to the right-hand side of its square.
    The rhs may be specialized by :meth:`bind` when some symbols are fixed to
    rationals, e.g. binding ``sa, cb, sb`` turns the w rule into ``w^2 -> W0``.

    The simplified norm ``sa^2*cb^2 + sb^2`` equals the squared norm only
    modulo the circle relations, so that w rule needs them.  A context built
    with ``literal_norm=True`` instead carries the unsimplified sum of squares
    of the plane vector, which is valid on its own; it is used to defer all
    trigonometric simplification to the end of a computation.
    """

    rules: Mapping[str, MultiPoly] = field(default_factory=dict)
    literal_norm: bool = False

    def __post_init__(self) -> None:
        for name in self.rules:
            if name not in RELATION_VARS:
                raise ValueError(f"{name!r} is not a relation variable")
        if "w" in self.rules and not self.literal_norm:
            w_vars = self.rules["w"].variables()
            for sin_name, cos_name in (("sa", "ca"), ("sb", "cb")):
                if w_vars & {sin_name, cos_name} and cos_name not in self.rules:
                    raise ValueError(f"the w relation requires the {cos_name} relation")

    @classmethod
    def full(cls) -> "TrigContext":
        return cls(dict(DEFAULT_RULES))

    @classmethod
    def empty(cls) -> "TrigContext":
        return cls({})

    @classmethod
    def with_active(cls, names) -> "TrigContext":
        names = set(names)
        unknown = names.difference(RELATION_VARS)
        if unknown:
            raise ValueError(f"unknown relations {sorted(unknown)}")
        return cls({n: DEFAULT_RULES[n] for n in RELATION_VARS if n in names})

    @classmethod
    def norm_only(cls, norm_sq: MultiPoly) -> "TrigContext":
        """Only ``w^2 -> norm_sq``, with ``norm_sq`` a literal sum of squares."""
        return cls({"w": norm_sq}, literal_norm=True)

    @property
    def active(self) -> frozenset[str]:
        return frozenset(self.rules)

    def without(self, name: str) -> "TrigContext":
        return TrigContext({k: v for k, v in self.rules.items() if k != name}, self.literal_norm)

    def bind(self, assignment: Mapping[str, RationalLike]) -> "TrigContext":
        """Specialize the rules after fixing some symbols to rationals.

        Rules for variables that are themselves bound disappear; the other
        right-hand sides are partially evaluated and re-reduced.
        """
        if not assignment:
            return self
        kept = {k: v.subs(assignment) for k, v in self.rules.items() if k not in assignment}
        base = TrigContext({k: v for k, v in kept.items() if k != "w"})
        if "w" in kept:
            kept["w"] = reduce(kept["w"], base)
        return TrigContext(kept, self.literal_norm)

    def __hash__(self) -> int:
        return hash((frozenset(self.rules.items()), self.literal_norm))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrigContext):
            return NotImplemented
        return dict(self.rules) == dict(other.rules) and self.literal_norm == other.literal_norm


_REL_IDX = tuple(INDEX[n] for n in RELATION_VARS)
_REL_MASK = 0
for _i in _REL_IDX:
    _REL_MASK |= _MASK << _SHIFT[_i]


class _Reducer:
    """Caches the normal form of pure relation-variable monomials."""

    def __init__(self, ctx: TrigContext):
        self.ctx = ctx
        self.idx = [(INDEX[n], ctx.rules[n]) for n in RELATION_VARS if n in ctx.rules]
        self.cache: dict[int, dict[int, Fraction]] = {}

    def needs(self, key: int) -> bool:
        for i, _ in self.idx:
            if (key >> _SHIFT[i]) & _MASK >= 2:
                return True
        return False

    def expand(self, relkey: int) -> dict[int, Fraction]:
        hit = self.cache.get(relkey)
        if hit is not None:
            return hit
        poly = MultiPoly.const(1)
        rest = relkey
        for i, rhs in self.idx:
            e = (relkey >> _SHIFT[i]) & _MASK
            if e >= 2:
                poly = poly * rhs ** (e // 2)
                rest -= (e - e % 2) * _unit(i)
        poly = poly * MultiPoly._raw({rest: Fraction(1)})
        terms = poly._terms
        if any(self.needs(k) for k in terms):
            terms = self.reduce_terms(terms)
        self.cache[relkey] = terms
        return terms

    def reduce_terms(self, terms: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        get = out.get
        for k, c in terms.items():
            if not self.needs(k):
                out[k] = get(k, 0) + c
                continue
            relkey = k & _REL_MASK
            base = k - relkey
            for ek, ec in self.expand(relkey).items():
                nk = base + ek
                out[nk] = get(nk, 0) + c * ec
        return {k: c for k, c in out.items() if c}


_REDUCERS: dict[TrigContext, _Reducer] = {}


def reduce(f: MultiPoly, ctx: Optional[TrigContext] = None) -> MultiPoly:
    """Normal form of ``f`` modulo the relations active in ``ctx`` (default: all)."""
    if ctx is None:
        ctx = FULL
    if not ctx.rules:
        return f
    red = _REDUCERS.get(ctx)
    if red is None:
        if len(_REDUCERS) > 256:
            _REDUCERS.clear()
        red = _REDUCERS[ctx] = _Reducer(ctx)
    if not any(red.needs(k) for k in f._terms):
        return f
    return MultiPoly._raw(red.reduce_terms(f._terms))


def is_reduced(f: MultiPoly, ctx: Optional[TrigContext] = None) -> bool:
    ctx = FULL if ctx is None else ctx
    for n in ctx.rules:
        if f.degree(n) >= 2:
            return False
    return True


FULL = TrigContext.full()

