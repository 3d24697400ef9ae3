"""Exact points, planes, lines and circles in 3-space.

Every coordinate is a ``Fraction`` and circles store their squared radius, so
all predicates here are decided by exact rational arithmetic.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence, Union

from .rational import RationalLike, Surd, format_rational, to_rational

Vec3 = tuple[Fraction, Fraction, Fraction]


def vec3(values: Sequence[RationalLike]) -> Vec3:
    if len(values) != 3:
        raise ValueError(f"expected 3 coordinates, got {len(values)}")
    x, y, z = (to_rational(v) for v in values)
    return x, y, z


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _is_zero_vec(v: Sequence[Fraction]) -> bool:
    return not any(v)


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike, z: RationalLike) -> "Point3":
        return cls(to_rational(x), to_rational(y), to_rational(z))

    def coords(self) -> Vec3:
        return self.x, self.y, self.z

    def __sub__(self, other: "Point3") -> Vec3:
        return self.x - other.x, self.y - other.y, self.z - other.z

    def translate(self, v: Sequence[Fraction]) -> "Point3":
        return Point3(self.x + v[0], self.y + v[1], self.z + v[2])

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coords()]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Point3":
        return cls(*vec3(data))


@dataclass(frozen=True)
class Plane3:
    """The plane ``{v : normal . v = offset}``."""

    normal: Vec3
    offset: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", vec3(self.normal))
        object.__setattr__(self, "offset", to_rational(self.offset))
        if _is_zero_vec(self.normal):
            raise ValueError("plane normal must be nonzero")

    def contains(self, p: Point3) -> bool:
        return dot(self.normal, p.coords()) == self.offset

    def translate(self, v: Sequence[Fraction]) -> "Plane3":
        return Plane3(self.normal, self.offset + dot(self.normal, v))


@dataclass(frozen=True)
class Line3:
    point: Point3
    direction: Vec3

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", vec3(self.direction))
        if _is_zero_vec(self.direction):
            raise ValueError("line direction must be nonzero")

    def contains(self, p: Point3) -> bool:
        return _is_zero_vec(cross(p - self.point, self.direction))

    def same_line(self, other: "Line3") -> bool:
        return _is_zero_vec(cross(self.direction, other.direction)) and self.contains(other.point)


@dataclass(frozen=True)
class Circle3:
    center: Point3
    radius_sq: Fraction
    plane: Plane3

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius_sq", to_rational(self.radius_sq))
        if self.radius_sq <= 0:
            raise ValueError("radius_sq must be positive")
        if not self.plane.contains(self.center):
            raise ValueError("circle center must lie on its plane")

    def translate(self, v: Sequence[Fraction]) -> "Circle3":
        return Circle3(self.center.translate(v), self.radius_sq, self.plane.translate(v))

    def to_json(self) -> dict[str, Any]:
        return {
            "center": self.center.to_json(),
            "radius_sq": format_rational(self.radius_sq),
            "normal": [format_rational(c) for c in self.plane.normal],
            "offset": format_rational(self.plane.offset),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Circle3":
        try:
            return cls(
                Point3.from_json(data["center"]),
                to_rational(data["radius_sq"]),
                Plane3(vec3(data["normal"]), to_rational(data["offset"])),
            )
        except KeyError as exc:
            raise ValueError(f"circle JSON is missing field {exc.args[0]!r}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class PairKind(enum.Enum):
    ALIGNED = "aligned"
    PERPENDICULAR = "perpendicular"
    GENERIC = "generic"


def dist_sq(a: Point3, b: Point3) -> Fraction:
    dx, dy, dz = a - b
    return dx * dx + dy * dy + dz * dz


def axis(c: Circle3) -> Line3:
    """The line through the center orthogonal to the circle's plane."""
    return Line3(c.center, c.plane.normal)


def classify_pair(c1: Circle3, c2: Circle3) -> PairKind:
    """Aligned if the axes coincide, perpendicular per the three plane tests.

    Concentric coplanar circles pass both tests and are reported as aligned.
    """
    if axis(c1).same_line(axis(c2)):
        return PairKind.ALIGNED
    if (
        dot(c1.plane.normal, c2.plane.normal) == 0
        and c2.plane.contains(c1.center)
        and c1.plane.contains(c2.center)
    ):
        return PairKind.PERPENDICULAR
    return PairKind.GENERIC


def perpendicular_bisector(a: Point3, b: Point3) -> Plane3:
    if a == b:
        raise ValueError("perpendicular bisector of a point with itself is undefined")
    normal = b - a
    offset = (dot(b.coords(), b.coords()) - dot(a.coords(), a.coords())) / 2
    return Plane3(normal, offset)


def project_drop_z(p: Point3) -> Point3:
    return Point3(p.x, p.y, Fraction(0))


def unit_circle_xy() -> Circle3:
    """The first circle of every configuration: radius 1 in z = 0 at the origin."""
    return Circle3(Point3.of(0, 0, 0), Fraction(1), Plane3(vec3((0, 0, 1)), Fraction(0)))


@dataclass(frozen=True)
class SurdPoint:
    """A point whose coordinates are signed square roots of rationals.

    The perpendicular construction produces such points; their pairwise
    squared distances are still rational whenever every cross term is.
    """

    coords: tuple[Surd, Surd, Surd]

    @classmethod
    def from_point(cls, p: Point3) -> "SurdPoint":
        return cls(tuple(Surd.of(c) for c in p.coords()))

    def to_point(self) -> Optional[Point3]:
        values = [c.rational() for c in self.coords]
        if any(v is None for v in values):
            return None
        return Point3(*values)

    def to_floats(self) -> tuple[float, float, float]:
        x, y, z = (float(c) for c in self.coords)
        return x, y, z

    def to_json(self) -> list[str]:
        return [c.to_text() for c in self.coords]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "SurdPoint":
        if len(data) != 3:
            raise ValueError(f"expected 3 coordinates, got {len(data)}")
        return cls(tuple(Surd.from_text(str(c)) for c in data))


AnyPoint = Union[Point3, SurdPoint]


def dist_sq_exact(a: AnyPoint, b: AnyPoint) -> Fraction:
    """Squared distance for rational or surd points.

    Raises ``IrrationalValue`` when a cross term, and hence the distance, is
    irrational.
    """
    if isinstance(a, Point3) and isinstance(b, Point3):
        return dist_sq(a, b)
    sa = a if isinstance(a, SurdPoint) else SurdPoint.from_point(a)
    sb = b if isinstance(b, SurdPoint) else SurdPoint.from_point(b)
    total = Fraction(0)
    for u, v in zip(sa.coords, sb.coords):
        total += u.square() + v.square()
        if u.sign and v.sign:
            total -= 2 * u.times(v)
    return total


def to_floats(p: AnyPoint) -> tuple[float, float, float]:
    if isinstance(p, SurdPoint):
        return p.to_floats()
    return float(p.x), float(p.y), float(p.z)


def points_to_json(points: Sequence[AnyPoint]) -> list[list[str]]:
    return [p.to_json() for p in points]


def points_from_json(data: Any) -> list[AnyPoint]:
    """Parse a JSON point list; rational points come back as ``Point3``."""
    if not isinstance(data, list):
        raise ValueError("point list must be a JSON array")
    out: list[AnyPoint] = []
    for item in data:
        if not isinstance(item, list):
            raise ValueError("each point must be a JSON array of 3 coordinates")
        sp = SurdPoint.from_json(item)
        exact = sp.to_point()
        out.append(exact if exact is not None else sp)
    return out
