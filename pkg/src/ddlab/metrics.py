"""Distance histograms, quadruple counts and the Cauchy-Schwarz bound.

Two pairs are equidistant exactly when their squared distances are equal, so
every histogram is keyed by squared distance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .geom import AnyPoint, Point3, dist_sq_exact, project_drop_z, to_floats


class AmbiguousBucket(UserWarning):
    """Float bucketing saw a gap too close to epsilon to trust."""


@dataclass(frozen=True)
class CountMode:
    """``exact`` compares rationals; ``float`` buckets by relative gap."""

    kind: str = "exact"
    epsilon: float = 1e-9

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "float"):
            raise ValueError(f"unknown count mode {self.kind!r}")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


EXACT = CountMode("exact")


@dataclass(frozen=True)
class DistanceHistogram:
    """Multiplicity of every squared distance.

    In float mode the keys are bucket representatives (the smallest value in
    each bucket) and ``ambiguous_gaps`` counts gaps in ``[eps, 10*eps]``.
    """

    entries: Mapping[Hashable, int]
    ambiguous_gaps: int = 0

    def __post_init__(self) -> None:
        if any(v < 1 for v in self.entries.values()):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "entries", dict(sorted(self.entries.items())))

    @property
    def distinct(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries.values())


def _histogram_exact(values: Iterable[Hashable]) -> DistanceHistogram:
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    return DistanceHistogram(counts)


def bucket_floats(values: Iterable[float], epsilon: float) -> DistanceHistogram:
    """Group sorted values; a relative gap above ``epsilon`` starts a new bucket."""
    ordered = sorted(values)
    counts: dict[float, int] = {}
    ambiguous = 0
    rep = None
    prev = None
    for v in ordered:
        if prev is None:
            rep = v
        else:
            scale = max(abs(v), abs(prev))
            gap = (v - prev) / scale if scale else 0.0
            if epsilon <= gap <= 10 * epsilon:
                ambiguous += 1
            if gap > epsilon:
                rep = v
        counts[rep] = counts.get(rep, 0) + 1
        prev = v
    if ambiguous:
        warnings.warn(
            f"{ambiguous} gap(s) between epsilon and 10*epsilon; bucket count may be unstable",
            AmbiguousBucket,
            stacklevel=3,
        )
    return DistanceHistogram(counts, ambiguous)


def bipartite_histogram(
    first: Sequence[AnyPoint],
    second: Sequence[AnyPoint],
    mode: CountMode = EXACT,
) -> DistanceHistogram:
    """Histogram of squared distances over all ``len(first) * len(second)`` pairs."""
    if not first or not second:
        raise ValueError("both point lists must be nonempty")
    if mode.kind == "exact":
        return _histogram_exact(dist_sq_exact(a, b) for a in first for b in second)
    fa = [to_floats(p) for p in first]
    fb = [to_floats(p) for p in second]
    values = [sum((x - y) ** 2 for x, y in zip(a, b)) for a in fa for b in fb]
    return bucket_floats(values, mode.epsilon)


def float_histogram(
    first: Sequence[Sequence[float]], second: Sequence[Sequence[float]], epsilon: float = 1e-9
) -> DistanceHistogram:
    values = [sum((x - y) ** 2 for x, y in zip(a, b)) for a in first for b in second]
    return bucket_floats(values, epsilon)


def distinct_distances(points: Sequence[AnyPoint], mode: CountMode = EXACT) -> DistanceHistogram:
    """Histogram over unordered pairs within one set, zero distances dropped."""
    pairs = [(points[i], points[j]) for i in range(len(points)) for j in range(i + 1, len(points))]
    if mode.kind == "exact":
        values = (dist_sq_exact(a, b) for a, b in pairs)
        return _histogram_exact(v for v in values if v != 0)
    floats = [sum((x - y) ** 2 for x, y in zip(to_floats(a), to_floats(b))) for a, b in pairs]
    return bucket_floats([v for v in floats if v != 0.0], mode.epsilon)


def quadruple_count(h: DistanceHistogram) -> int:
    """Ordered quadruples ``(a, a', b, b')`` with ``|ab| = |a'b'|``: the sum of m^2."""
    return sum(m * m for m in h.entries.values())


def cauchy_schwarz_bound(h: DistanceHistogram) -> Fraction:
    """``(sum m)^2 / D``, a lower bound for :func:`quadruple_count`."""
    if not h.entries:
        raise ValueError("empty histogram")
    return Fraction(h.total**2, h.distinct)


def check_projection_invariance(first: Sequence[Point3], second: Sequence[Point3]) -> bool:
    """Distinct-distance count is unchanged when ``second`` is dropped to ``z = 0``.

    ``first`` must lie in ``z = 0`` and ``second`` in a common plane ``z = c``.
    """
    if not first or not second:
        raise ValueError("both point lists must be nonempty")
    if any(p.z != 0 for p in first):
        raise ValueError("first point set must lie in the plane z = 0")
    heights = {p.z for p in second}
    if len(heights) != 1:
        raise ValueError("second point set must lie in one horizontal plane")
    before = bipartite_histogram(first, second)
    after = bipartite_histogram(first, [project_drop_z(p) for p in second])
    return before.distinct == after.distinct


def histogram_to_json(h: DistanceHistogram, key_format=str) -> list[list]:
    return [[key_format(k), m] for k, m in h.entries.items()]
