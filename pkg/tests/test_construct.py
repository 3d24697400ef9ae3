import math
import random
from fractions import Fraction as F

import pytest

from ddlab.construct import (
    AlignedConstructionParams,
    AngularPointSet,
    ParameterError,
    PerpConstructionParams,
    aligned_class_histogram,
    aligned_dist_sq_float,
    aligned_distance_classes,
    build_aligned,
    build_perpendicular,
    count_perpendicular_distances,
    default_beta_ratio,
    perp_params,
)
from ddlab.geom import PairKind, classify_pair, dist_sq_exact, unit_circle_xy
from ddlab.metrics import bipartite_histogram

EXAMPLE = PerpConstructionParams(2, 2, F(1), F(2), F(3, 2), F(9, 10))


def test_perpendicular_example_distances():
    cons = build_perpendicular(EXAMPLE)
    # 2*(9/4)*(9/10)^e + 1 + 4 - 1, worked by hand
    expected = {0: F(17, 2), 1: F(161, 20), 2: F(1529, 200)}
    for (j, k), d in cons.distance_table().items():
        assert d == expected[j + k]
    assert set(cons.distance_table().values()) == set(expected.values())


def test_closed_form_at_origin_pair():
    rng = random.Random(0)
    for _ in range(20):
        p = perp_params(rng.randint(1, 6), rng.randint(1, 6))
        cons = build_perpendicular(p)
        assert cons.dist_sq(0, 0) == 2 * p.b**2 + 1 + p.r**2 - p.a**2


@pytest.mark.parametrize("m,n,expected", [(2, 2, 3), (1, 5, 5), (16, 16, 31), (1, 1, 1)])
def test_count_perpendicular(m, n, expected):
    assert count_perpendicular_distances(perp_params(m, n)) == expected


def _random_valid_params(rng):
    m, n = rng.randint(1, 8), rng.randint(1, 8)
    a = F(rng.randint(1, 20), rng.randint(1, 10))
    r = F(rng.randint(1, 20), rng.randint(1, 10))
    span = min(F(1), r)
    b = a + span * F(rng.randint(1, 99), 100)
    return perp_params(m, n, a, r, b)


def test_closed_form_matches_coordinates():
    rng = random.Random(1)
    for _ in range(100):
        cons = build_perpendicular(_random_valid_params(rng))
        exact1, exact2 = cons.exact_points()
        float1, float2 = cons.float_points()
        for j, (e1, f1) in enumerate(zip(exact1, float1)):
            for k, (e2, f2) in enumerate(zip(exact2, float2)):
                closed = cons.dist_sq(j, k)
                assert dist_sq_exact(e1, e2) == closed
                numeric = sum((x - y) ** 2 for x, y in zip(f1, f2))
                assert math.isclose(numeric, float(closed), rel_tol=1e-9)


def test_in_range_and_count_properties():
    rng = random.Random(2)
    for _ in range(200):
        p = _random_valid_params(rng)
        cons = build_perpendicular(p)
        assert cons.in_range_checks()
        assert count_perpendicular_distances(p) == p.m + p.n - 1
        assert len(set(cons.distance_table().values())) == p.m + p.n - 1


def test_construction_circles_are_perpendicular():
    c1, c2 = build_perpendicular(EXAMPLE).circles
    assert c1 == unit_circle_xy()
    assert classify_pair(c1, c2) is PairKind.PERPENDICULAR


def test_default_beta_is_smallest_grid_point():
    a, b = F(1), F(3, 2)
    for n in (1, 2, 16):
        beta = default_beta_ratio(a, b, n)
        assert beta.denominator <= 10**6
        assert beta**n * b > a
        assert (beta - F(1, 10**6)) ** n * b <= a
    assert default_beta_ratio(a, b, 16) == F(974977, 10**6)


def test_parameter_validation():
    with pytest.raises(ParameterError):
        perp_params(0, 3)
    with pytest.raises(ParameterError):
        perp_params(2, 2, a=1, b=F(5, 2))  # b >= a + 1
    with pytest.raises(ParameterError):
        perp_params(2, 2, a=1, r=F(1, 4), b=F(3, 2))  # b >= a + r
    with pytest.raises(ParameterError):
        perp_params(2, 16, beta_ratio=F(1, 2))  # beta^n * b <= a
    with pytest.raises(ParameterError):
        perp_params(2, 2, beta_ratio=1)
    assert PerpConstructionParams(5, 2).m == 2


# -- aligned ---------------------------------------------------------------------------


def test_aligned_example_three_distances():
    p1, p2 = build_aligned(AlignedConstructionParams(4, 4, lattice_size=4))
    # brute force with the chord formula 1 + 4 + 1 - 4*cos
    values = {round(6 - 4 * math.cos(2 * math.pi * (j - k) / 4), 12) for j in range(4) for k in range(4)}
    assert values == {2.0, 6.0, 10.0}
    assert len(aligned_distance_classes(p1, p2)) == 3


def test_aligned_single_points():
    p1, p2 = build_aligned(AlignedConstructionParams(1, 1))
    assert aligned_distance_classes(p1, p2) == {0}


def test_aligned_sixteen_bound():
    p1, p2 = build_aligned(AlignedConstructionParams(16, 16, lattice_size=16))
    assert len(aligned_distance_classes(p1, p2)) <= 16 // 2 + 1


def test_angular_class_examples():
    c = unit_circle_xy()
    full = AngularPointSet(c, (0, 1, 2, 3), 4)
    assert aligned_distance_classes(full, full) == {0, 1, 2}
    assert aligned_distance_classes(AngularPointSet(c, (0,), 8), AngularPointSet(c, (1, 3), 8)) == {1, 3}
    with pytest.raises(ValueError):
        aligned_distance_classes(AngularPointSet(c, (0,), 8), AngularPointSet(c, (0,), 6))


def test_aligned_classes_match_float_buckets():
    rng = random.Random(3)
    for _ in range(30):
        m, n = rng.randint(1, 9), rng.randint(1, 9)
        params = AlignedConstructionParams(m, n, F(rng.randint(1, 9)), F(rng.randint(1, 9)), F(rng.randint(0, 4)))
        p1, p2 = build_aligned(params)
        hist = aligned_class_histogram(p1, p2)
        assert sum(hist.values()) == m * n
        assert len(hist) <= m + n - 1
        floats = sorted(
            sum((x - y) ** 2 for x, y in zip(a, b)) for a in p1.float_points() for b in p2.float_points()
        )
        buckets = 1 + sum(1 for u, v in zip(floats, floats[1:]) if v - u > 1e-9 * max(v, 1))
        assert buckets == len(hist)
        for cls in hist:
            assert math.isfinite(aligned_dist_sq_float(p1, p2, cls))


def test_aligned_validation():
    with pytest.raises(ParameterError):
        AlignedConstructionParams(4, 4, lattice_size=3)
    with pytest.raises(ParameterError):
        AlignedConstructionParams(2, 2, r1_sq=0)
    with pytest.raises(ValueError):
        AngularPointSet(unit_circle_xy(), (0, 0), 4)


def test_aligned_sets_classify_aligned():
    p1, p2 = build_aligned(AlignedConstructionParams(3, 5))
    assert classify_pair(p1.circle, p2.circle) is PairKind.ALIGNED
    assert AngularPointSet.from_json(p2.to_json()) == p2


def test_exact_histogram_of_example():
    first, second = build_perpendicular(EXAMPLE).exact_points()
    h = bipartite_histogram(first, second)
    assert h.entries == {F(1529, 200): 1, F(161, 20): 2, F(17, 2): 1}
