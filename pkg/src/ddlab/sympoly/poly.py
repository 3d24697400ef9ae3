"""Sparse multivariate polynomials over Q in a fixed variable alphabet.

Every polynomial lives in Q[s, t, p, q, r, sa, ca, sb, cb, sg, cg, w].  The
alphabet is fixed so that exponent vectors can be packed into a single Python
int, 16 bits per variable, with ``s`` in the most significant slot.  Monomial
multiplication is then integer addition, and comparing packed ints is the
lexicographic order on exponent tuples.

Terms are stored in a dict ``{packed_monomial: Fraction}``; zero coefficients
are never stored, so the zero polynomial is the empty dict.
"""

from __future__ import annotations

import heapq
import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

from ..rational import RationalLike, format_rational, to_rational

VARIABLES: tuple[str, ...] = (
    "s", "t", "p", "q", "r", "sa", "ca", "sb", "cb", "sg", "cg", "w",
)
NVARS = len(VARIABLES)
INDEX = {name: i for i, name in enumerate(VARIABLES)}

_BITS = 16
_MASK = (1 << _BITS) - 1
_SHIFT = tuple(_BITS * (NVARS - 1 - i) for i in range(NVARS))
_MAX_EXP = _MASK

Monomial = tuple[int, ...]


class MissingVariableError(KeyError):
    """An evaluation assignment does not cover a variable of the polynomial."""


class NonDifferentiableVariable(ValueError):
    """Differentiation was requested with respect to a constant symbol."""


def pack(exps: Iterable[int]) -> int:
    exps = tuple(exps)
    if len(exps) != NVARS:
        raise ValueError(f"exponent vector must have {NVARS} entries, got {len(exps)}")
    key = 0
    for e, sh in zip(exps, _SHIFT):
        if e < 0 or e > _MAX_EXP:
            raise ValueError(f"exponent {e} out of range")
        key |= e << sh
    return key


def unpack(key: int) -> Monomial:
    return tuple((key >> sh) & _MASK for sh in _SHIFT)


def _exp(key: int, i: int) -> int:
    return (key >> _SHIFT[i]) & _MASK


def _unit(i: int) -> int:
    return 1 << _SHIFT[i]


def _total(key: int) -> int:
    total = 0
    while key:
        total += key & _MASK
        key >>= _BITS
    return total


def grlex_key(key: int) -> tuple[int, int]:
    """Sort key for graded lex order: total degree first, then lex (s first)."""
    return _total(key), key


def _divides(a: int, b: int) -> bool:
    """True when monomial ``a`` divides monomial ``b`` (packed form)."""
    for sh in _SHIFT:
        if (a >> sh) & _MASK > (b >> sh) & _MASK:
            return False
    return True


Scalar = Union[int, Fraction]


class MultiPoly:
    """Immutable sparse polynomial with exact rational coefficients.

    Construct from a mapping ``{exponent_tuple: coefficient}``, or use
    :meth:`var`, :meth:`const` and ordinary arithmetic::

        s, t = MultiPoly.var("s"), MultiPoly.var("t")
        f = (1 + s**2) * (1 + t**2)
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, RationalLike]] = None):
        clean: dict[int, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            c = to_rational(coeff)
            if c:
                key = pack(mono)
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw({})

    @classmethod
    def const(cls, value: RationalLike) -> "MultiPoly":
        c = to_rational(value)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        if name not in INDEX:
            raise ValueError(f"unknown variable {name!r}; alphabet is {VARIABLES}")
        return cls._raw({_unit(INDEX[name]): Fraction(1)})

    @classmethod
    def monomial(cls, coeff: RationalLike = 1, **exps: int) -> "MultiPoly":
        vec = [0] * NVARS
        for name, e in exps.items():
            vec[INDEX[name]] = e
        return cls({tuple(vec): coeff})

    # -- basic protocol -----------------------------------------------------

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms as ``(exponent_tuple, coefficient)`` in descending grlex order."""
        for key in sorted(self._terms, key=grlex_key, reverse=True):
            yield unpack(key), self._terms[key]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations ----------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.const(other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other: object) -> "MultiPoly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = o._terms, self._terms
        else:
            big, small = self._terms, o._terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({k: -c for k, c in self._terms.items()})

    def __pos__(self) -> "MultiPoly":
        return self

    def __sub__(self, other: object) -> "MultiPoly":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, factor: RationalLike) -> "MultiPoly":
        f = to_rational(factor)
        if not f:
            return MultiPoly.zero()
        return MultiPoly._raw({k: c * f for k, c in self._terms.items()})

    def __mul__(self, other: object) -> "MultiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return MultiPoly.zero()
        if self._max_exp() + other._max_exp() > _MAX_EXP:
            raise OverflowError("exponent overflow in polynomial product")
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Fraction] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return MultiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _max_exp(self) -> int:
        best = 0
        for k in self._terms:
            for sh in _SHIFT:
                e = (k >> sh) & _MASK
                if e > best:
                    best = e
        return best

    # -- structure ----------------------------------------------------------

    def degree(self, name: str) -> int:
        """Degree in one variable; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        i = INDEX[name]
        return max(_exp(k, i) for k in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(_total(k) for k in self._terms)

    def variables(self) -> set[str]:
        seen = 0
        for k in self._terms:
            seen |= k
        return {name for i, name in enumerate(VARIABLES) if _exp(seen, i)}

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = max(self._terms, key=grlex_key)
        return unpack(key), self._terms[key]

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self._terms:
            return Fraction(0)
        g, l = 0, 1
        for c in self._terms.values():
            g = math.gcd(g, c.numerator)
            l = l * c.denominator // math.gcd(l, c.denominator)
        return Fraction(g, l)

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self._terms:
            return (0,) * NVARS
        it = iter(self._terms)
        low = list(unpack(next(it)))
        for k in it:
            for i in range(NVARS):
                e = _exp(k, i)
                if e < low[i]:
                    low[i] = e
        return tuple(low)

    def divide_monomial(self, mono: Monomial) -> "MultiPoly":
        key = pack(mono)
        out = {}
        for k, c in self._terms.items():
            if not _divides(key, k):
                raise ValueError("monomial does not divide every term")
            out[k - key] = c
        return MultiPoly._raw(out)

    def mul_monomial(self, mono: Monomial, coeff: RationalLike = 1) -> "MultiPoly":
        key = pack(mono)
        c0 = to_rational(coeff)
        if not c0:
            return MultiPoly.zero()
        return MultiPoly._raw({k + key: c * c0 for k, c in self._terms.items()})

    def divide_exact(self, divisor: "MultiPoly") -> Optional["MultiPoly"]:
        """Exact quotient ``self / divisor`` in Q[vars], or ``None``.

        Plain multivariate division with a single divisor: when the divisor
        divides exactly, the grlex division algorithm leaves remainder zero,
        so the first leading term that the divisor's leading monomial cannot
        divide proves non-divisibility.
        """
        if not divisor._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return MultiPoly.zero()
        lt_key = max(divisor._terms, key=grlex_key)
        lt_coeff = divisor._terms[lt_key]
        if len(divisor._terms) == 1:
            out = {}
            for k, c in self._terms.items():
                if not _divides(lt_key, k):
                    return None
                out[k - lt_key] = c / lt_coeff
            return MultiPoly._raw(out)
        rem = dict(self._terms)
        heap = [(-_total(k), -k) for k in rem]
        heapq.heapify(heap)
        quot: dict[int, Fraction] = {}
        dterms = list(divisor._terms.items())
        while heap:
            _, negk = heapq.heappop(heap)
            k = -negk
            c = rem.pop(k, None)
            if c is None:
                continue
            if not _divides(lt_key, k):
                return None
            qk = k - lt_key
            qc = c / lt_coeff
            quot[qk] = qc
            for dk, dc in dterms:
                if dk == lt_key:
                    continue
                nk = qk + dk
                v = rem.get(nk)
                if v is None:
                    rem[nk] = -qc * dc
                    heapq.heappush(heap, (-_total(nk), -nk))
                else:
                    v -= qc * dc
                    if v:
                        rem[nk] = v
                    else:
                        del rem[nk]
        return MultiPoly._raw(quot)

    # -- calculus and projection --------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        """Formal partial derivative with respect to ``s`` or ``t``."""
        if name not in ("s", "t"):
            raise NonDifferentiableVariable(
                f"cannot differentiate with respect to {name!r}: only s and t vary"
            )
        i = INDEX[name]
        unit = _unit(i)
        out = {}
        for k, c in self._terms.items():
            e = _exp(k, i)
            if e:
                out[k - unit] = c * e
        return MultiPoly._raw(out)

    def coefficient(self, s_deg: int, t_deg: int) -> "MultiPoly":
        """Polynomial in the remaining variables multiplying ``s^s_deg t^t_deg``."""
        i_s, i_t = INDEX["s"], INDEX["t"]
        out = {}
        for k, c in self._terms.items():
            if _exp(k, i_s) == s_deg and _exp(k, i_t) == t_deg:
                out[k - s_deg * _unit(i_s) - t_deg * _unit(i_t)] = c
        return MultiPoly._raw(out)

    def st_support(self) -> list[tuple[int, int]]:
        """Sorted list of ``(s_deg, t_deg)`` pairs carrying a nonzero coefficient."""
        i_s, i_t = INDEX["s"], INDEX["t"]
        return sorted({(_exp(k, i_s), _exp(k, i_t)) for k in self._terms})

    def split_w(self) -> tuple["MultiPoly", "MultiPoly"]:
        """Return ``(A, B)`` with ``self == A + B*w``; requires w-degree <= 1."""
        i = INDEX["w"]
        unit = _unit(i)
        a, b = {}, {}
        for k, c in self._terms.items():
            e = _exp(k, i)
            if e == 0:
                a[k] = c
            elif e == 1:
                b[k - unit] = c
            else:
                raise ValueError("polynomial is not linear in w; reduce it first")
        return MultiPoly._raw(a), MultiPoly._raw(b)

    def subs(self, assignment: Mapping[str, RationalLike]) -> "MultiPoly":
        """Partially evaluate: replace the named variables by rationals."""
        if not assignment:
            return self
        # Integer arithmetic over one common denominator: v_i = n_i/d_i enters
        # a term as n_i^e * d_i^(E_i - e), with E_i the largest exponent.
        idx = [(INDEX[name], to_rational(v)) for name, v in assignment.items()]
        idx = [(i, v, max((_exp(k, i) for k in self._terms), default=0)) for i, v in idx]
        idx = [item for item in idx if item[2]]
        if not idx:
            return self
        powers: dict[tuple[int, int, bool], int] = {}

        def power(i: int, base: int, e: int, is_den: bool) -> int:
            key = (i, e, is_den)
            val = powers.get(key)
            if val is None:
                val = powers[key] = base**e
            return val

        common = 1
        for i, v, top in idx:
            common *= v.denominator**top
        out: dict[int, dict[int, int]] = {}
        for k, c in self._terms.items():
            nk, num = k, 1
            for i, v, top in idx:
                e = _exp(k, i)
                num *= power(i, v.numerator, e, False) * power(i, v.denominator, top - e, True)
                nk -= e * _unit(i)
            if num:
                bucket = out.setdefault(nk, {})
                bucket[c.denominator] = bucket.get(c.denominator, 0) + c.numerator * num
        terms: dict[int, Fraction] = {}
        for nk, bucket in out.items():
            total = sum((Fraction(n, d * common) for d, n in bucket.items()), Fraction(0))
            if total:
                terms[nk] = total
        return MultiPoly._raw(terms)

    def substitute(self, name: str, value: "MultiPoly") -> "MultiPoly":
        """Replace one variable by a polynomial."""
        i = INDEX[name]
        groups: dict[int, dict[int, Fraction]] = {}
        for k, c in self._terms.items():
            e = _exp(k, i)
            groups.setdefault(e, {})[k - e * _unit(i)] = c
        result = MultiPoly.zero()
        for e in sorted(groups):
            result = result + MultiPoly._raw(groups[e]) * value ** e
        return result

    def rewrite_monomial(self, pattern: "MultiPoly", replacement: "MultiPoly") -> "MultiPoly":
        """Replace the monomial ``pattern`` by ``replacement`` wherever it divides a term.

        Used to impose a side condition such as ``p*ca = -q*sa``; each term is
        rewritten as often as the pattern divides it.
        """
        if len(pattern._terms) != 1 or next(iter(pattern._terms.values())) != 1:
            raise ValueError("pattern must be a single monic monomial")
        pkey = next(iter(pattern._terms))
        result = MultiPoly.zero()
        for k, c in self._terms.items():
            n = 0
            while _divides(pkey, k) and pkey:
                k -= pkey
                n += 1
            result = result + MultiPoly._raw({k: c}) * replacement ** n
        return result

    def eval(self, assignment: Mapping[str, RationalLike]) -> Fraction:
        """Exact value at a point; every variable present must be assigned."""
        needed = self.variables()
        missing = needed.difference(assignment)
        if missing:
            raise MissingVariableError(f"no value for {sorted(missing)}")
        value = self.subs({n: assignment[n] for n in needed})
        return value.constant_value()

    # -- text form ----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical serialization: grlex-descending ``coeff*s^a*t^b`` terms."""
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.items():
            factors = [format_rational(c)]
            for name, e in zip(VARIABLES, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "MultiPoly":
        """Parse the canonical serialization produced by :meth:`to_text`."""
        body = text.strip()
        if body == "0":
            return cls.zero()
        terms: dict[Monomial, Fraction] = {}
        for chunk in body.split(" + "):
            factors = chunk.strip().split("*")
            coeff = to_rational(factors[0])
            vec = [0] * NVARS
            for f in factors[1:]:
                m = re.fullmatch(r"([a-z]+)(?:\^(\d+))?", f)
                if not m or m.group(1) not in INDEX:
                    raise ValueError(f"bad factor {f!r} in {chunk!r}")
                vec[INDEX[m.group(1)]] += int(m.group(2) or 1)
            key = tuple(vec)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return cls(terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        text = self.to_text()
        if len(text) > 120:
            text = text[:117] + "..."
        return f"MultiPoly({text!r})"


def variables(*names: str) -> tuple[MultiPoly, ...]:
    """Convenience: ``s, t = variables("s", "t")``."""
    return tuple(MultiPoly.var(n) for n in names)
