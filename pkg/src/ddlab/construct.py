"""Point sets on two circles that span few distinct distances.

Two families are built here.

Perpendicular: the unit circle in ``z = 0`` and a circle of radius ``r`` in
the plane ``y = 0`` centered at ``(-a, 0, 0)``.  Point ``j`` of the first set
has ``x = b*beta^j - a`` and point ``k`` of the second has ``x = -b*beta^k``,
which makes every squared distance equal to
``2*b^2*beta^(j+k) + 1 + r^2 - a^2``.  Only ``j + k`` matters, so ``m`` and
``n`` points span exactly ``m + n - 1`` distances.

Aligned: two coaxial circles carrying vertices of one regular ``N``-gon.  The
squared distance between vertex ``j`` and vertex ``k`` is
``r1^2 + r2^2 + c^2 - 2*r1*r2*cos(2*pi*(j - k)/N)``, so it depends only on the
angular class ``min(d, N - d)`` with ``d = (j - k) mod N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .geom import Circle3, Plane3, Point3, SurdPoint, vec3
from .rational import RationalLike, Surd, format_rational, to_rational

DEFAULT_A = Fraction(1)
DEFAULT_R = Fraction(2)
DEFAULT_B = Fraction(3, 2)
BETA_DENOMINATOR = 10**6


class ParameterError(ValueError):
    """Construction parameters violate a range constraint."""


def default_beta_ratio(a: Fraction, b: Fraction, n: int, denominator: int = BETA_DENOMINATOR) -> Fraction:
    """Smallest ``k/denominator`` with ``(k/denominator)^n * b > a``.

    This is the grid rational just above ``(a/b)^(1/n)``, found by binary
    search with exact integer powers.
    """
    if not 0 < a < b:
        raise ParameterError("need 0 < a < b")
    target_num = a.numerator * b.denominator
    target_den = a.denominator * b.numerator
    dn = denominator**n

    def above(k: int) -> bool:
        # (k/D)^n > a/b  <=>  k^n * target_den > target_num * D^n
        return k**n * target_den > target_num * dn

    lo, hi = 0, denominator  # above(hi) holds since a < b
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if above(mid):
            hi = mid
        else:
            lo = mid
    if hi == denominator:
        raise ParameterError("no grid rational strictly between (a/b)^(1/n) and 1")
    return Fraction(hi, denominator)


@dataclass(frozen=True)
class PerpConstructionParams:
    m: int
    n: int
    a: Fraction = DEFAULT_A
    r: Fraction = DEFAULT_R
    b: Fraction = DEFAULT_B
    beta_ratio: Optional[Fraction] = None

    def __post_init__(self) -> None:
        m, n = self.m, self.n
        if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
            raise ParameterError("m and n must be positive integers")
        if m > n:
            m, n = n, m
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        a, r, b = (to_rational(v) for v in (self.a, self.r, self.b))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "b", b)
        if a <= 0:
            raise ParameterError("a must be positive")
        if r <= 0:
            raise ParameterError("r must be positive")
        if not a < b < a + min(Fraction(1), r):
            raise ParameterError("need a < b < a + min(1, r)")
        beta = self.beta_ratio
        beta = default_beta_ratio(a, b, n) if beta is None else to_rational(beta)
        object.__setattr__(self, "beta_ratio", beta)
        if not 0 < beta < 1:
            raise ParameterError("beta_ratio must lie in (0, 1)")
        if not beta**n * b > a:
            raise ParameterError("beta_ratio^n * b must exceed a")

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "a": format_rational(self.a),
            "r": format_rational(self.r),
            "b": format_rational(self.b),
            "beta_ratio": format_rational(self.beta_ratio),
        }


@dataclass(frozen=True)
class PerpConstruction:
    params: PerpConstructionParams
    first_indices: range = field(init=False)
    second_indices: range = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "first_indices", range(self.params.m))
        object.__setattr__(self, "second_indices", range(self.params.n))

    @property
    def circles(self) -> tuple[Circle3, Circle3]:
        p = self.params
        c1 = Circle3(Point3.of(0, 0, 0), Fraction(1), Plane3(vec3((0, 0, 1)), Fraction(0)))
        c2 = Circle3(Point3.of(-p.a, 0, 0), p.r * p.r, Plane3(vec3((0, 1, 0)), Fraction(0)))
        return c1, c2

    def dist_sq(self, j: int, k: int) -> Fraction:
        """The closed form ``2*b^2*beta^(j+k) + 1 + r^2 - a^2``."""
        p = self.params
        return 2 * p.b**2 * p.beta_ratio ** (j + k) + 1 + p.r**2 - p.a**2

    def first_x(self, j: int) -> Fraction:
        p = self.params
        return p.b * p.beta_ratio**j - p.a

    def second_x(self, k: int) -> Fraction:
        p = self.params
        return -p.b * p.beta_ratio**k

    def exact_points(self) -> tuple[list[SurdPoint], list[SurdPoint]]:
        """Both point sets with coordinates of the form +-sqrt(rational)."""
        p = self.params
        first = []
        for j in self.first_indices:
            x = self.first_x(j)
            first.append(SurdPoint((Surd.of(x), Surd.sqrt(1 - x * x), Surd.of(0))))
        second = []
        for k in self.second_indices:
            x = self.second_x(k)
            shift = x + p.a
            second.append(SurdPoint((Surd.of(x), Surd.of(0), Surd.sqrt(p.r**2 - shift * shift))))
        return first, second

    def float_points(self) -> tuple[list[tuple[float, float, float]], list[tuple[float, float, float]]]:
        """Coordinates from the two circle parametrizations, in floating point.

        The first circle uses ``(x, sqrt(1 - x^2), 0)``.  The second uses
        ``(-a + r*u, 0, r*sqrt(1 - u^2))`` with ``u = (a - b*beta^k)/r``.
        """
        p = self.params
        a, r = float(p.a), float(p.r)
        first = []
        for j in self.first_indices:
            x = float(self.first_x(j))
            first.append((x, math.sqrt(1.0 - x * x), 0.0))
        second = []
        for k in self.second_indices:
            u = float((p.a - p.b * p.beta_ratio**k) / p.r)
            second.append((-a + r * u, 0.0, r * math.sqrt(1.0 - u * u)))
        return first, second

    def in_range_checks(self) -> bool:
        """``0 < b*beta^j - a < 1`` and ``-1 < (a - b*beta^k)/r < 0`` for all indices."""
        p = self.params
        ok_first = all(0 < self.first_x(j) < 1 for j in self.first_indices)
        ok_second = all(-1 < (p.a - p.b * p.beta_ratio**k) / p.r < 0 for k in self.second_indices)
        return ok_first and ok_second

    def distance_table(self) -> dict[tuple[int, int], Fraction]:
        return {(j, k): self.dist_sq(j, k) for j in self.first_indices for k in self.second_indices}


def build_perpendicular(params: PerpConstructionParams) -> PerpConstruction:
    return PerpConstruction(params)


def count_perpendicular_distances(params: PerpConstructionParams) -> int:
    """Number of distinct exponents ``j + k``.

    Since ``0 < beta_ratio < 1``, ``beta_ratio^e`` is strictly decreasing in
    ``e``, so distinct exponents give distinct squared distances.
    """
    return len({j + k for j in range(params.m) for k in range(params.n)})


@dataclass(frozen=True)
class AlignedConstructionParams:
    m: int
    n: int
    r1_sq: Fraction = Fraction(1)
    r2_sq: Fraction = Fraction(4)
    plane_gap: Fraction = Fraction(1)
    lattice_size: Optional[int] = None

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and isinstance(self.n, int)) or self.m < 1 or self.n < 1:
            raise ParameterError("m and n must be positive integers")
        for name in ("r1_sq", "r2_sq", "plane_gap"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.r1_sq <= 0 or self.r2_sq <= 0:
            raise ParameterError("squared radii must be positive")
        size = max(self.m, self.n) if self.lattice_size is None else self.lattice_size
        if not isinstance(size, int) or size < max(self.m, self.n):
            raise ParameterError("lattice_size must be an integer >= max(m, n)")
        object.__setattr__(self, "lattice_size", size)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "r1_sq": format_rational(self.r1_sq),
            "r2_sq": format_rational(self.r2_sq),
            "plane_gap": format_rational(self.plane_gap),
            "lattice_size": self.lattice_size,
        }


@dataclass(frozen=True)
class AngularPointSet:
    """Vertices ``2*pi*j/N`` (``j`` in ``indices``) of a regular N-gon on a circle."""

    circle: Circle3
    indices: tuple[int, ...]
    lattice_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(self.indices))
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("indices must be distinct")
        if any(not 0 <= j < self.lattice_size for j in self.indices):
            raise ValueError("indices must lie in [0, N)")

    def float_points(self) -> list[tuple[float, float, float]]:
        radius = math.sqrt(self.circle.radius_sq)
        cx, cy, cz = (float(v) for v in self.circle.center.coords())
        out = []
        for j in self.indices:
            theta = 2 * math.pi * j / self.lattice_size
            out.append((cx + radius * math.cos(theta), cy + radius * math.sin(theta), cz))
        return out

    def to_json(self) -> dict:
        return {"circle": self.circle.to_json(), "indices": list(self.indices), "lattice_size": self.lattice_size}

    @classmethod
    def from_json(cls, data: dict) -> "AngularPointSet":
        return cls(Circle3.from_json(data["circle"]), tuple(int(j) for j in data["indices"]), int(data["lattice_size"]))


def build_aligned(params: AlignedConstructionParams) -> tuple[AngularPointSet, AngularPointSet]:
    """Both sets on circles about the z-axis, in ``z = 0`` and ``z = plane_gap``."""
    up = vec3((0, 0, 1))
    c1 = Circle3(Point3.of(0, 0, 0), params.r1_sq, Plane3(up, Fraction(0)))
    c2 = Circle3(Point3.of(0, 0, params.plane_gap), params.r2_sq, Plane3(up, params.plane_gap))
    n = params.lattice_size
    return AngularPointSet(c1, tuple(range(params.m)), n), AngularPointSet(c2, tuple(range(params.n)), n)


def angular_class(j: int, k: int, lattice_size: int) -> int:
    d = (j - k) % lattice_size
    return min(d, lattice_size - d)


def aligned_distance_classes(p1: AngularPointSet, p2: AngularPointSet) -> set[int]:
    """Distinct angular classes; one class per distinct distance.

    ``cos`` is injective on ``[0, pi]``, so as long as both radii are
    positive two pairs are equidistant exactly when they share a class.
    """
    if p1.lattice_size != p2.lattice_size:
        raise ValueError("point sets use different lattices")
    n = p1.lattice_size
    return {angular_class(j, k, n) for j in p1.indices for k in p2.indices}


def aligned_class_histogram(p1: AngularPointSet, p2: AngularPointSet) -> dict[int, int]:
    if p1.lattice_size != p2.lattice_size:
        raise ValueError("point sets use different lattices")
    n = p1.lattice_size
    hist: dict[int, int] = {}
    for j in p1.indices:
        for k in p2.indices:
            c = angular_class(j, k, n)
            hist[c] = hist.get(c, 0) + 1
    return hist


def aligned_dist_sq_float(p1: AngularPointSet, p2: AngularPointSet, cls: int) -> float:
    """Chord formula ``r1^2 + r2^2 + c^2 - 2*r1*r2*cos(2*pi*cls/N)``."""
    gap = float(p2.circle.center.z - p1.circle.center.z)
    r1, r2 = math.sqrt(p1.circle.radius_sq), math.sqrt(p2.circle.radius_sq)
    return r1 * r1 + r2 * r2 + gap * gap - 2 * r1 * r2 * math.cos(2 * math.pi * cls / p1.lattice_size)


def perp_params(
    m: int,
    n: int,
    a: Optional[RationalLike] = None,
    r: Optional[RationalLike] = None,
    b: Optional[RationalLike] = None,
    beta_ratio: Optional[RationalLike] = None,
) -> PerpConstructionParams:
    """Parameters with the defaults ``a = 1, r = 2, b = 3/2`` filled in."""
    return PerpConstructionParams(
        m,
        n,
        DEFAULT_A if a is None else to_rational(a),
        DEFAULT_R if r is None else to_rational(r),
        DEFAULT_B if b is None else to_rational(b),
        None if beta_ratio is None else to_rational(beta_ratio),
    )
