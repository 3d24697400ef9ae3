"""Acceptance suite: one test per criterion, each printing a PASS/FAIL summary line.

Run with ``pytest tests/test_acceptance.py -v``; the summary appears at the end
of the terminal report under "acceptance criteria".
"""

import itertools
import math
import random
import shutil
import subprocess
import sys
from collections import Counter
from fractions import Fraction as F

import pytest

import test_sympoly as engine
from ddlab.construct import (
    AlignedConstructionParams,
    aligned_distance_classes,
    build_aligned,
    build_perpendicular,
    perp_params,
)
from ddlab.derivtest import (
    IDENTITIES,
    NUMERATORS,
    SUPPLEMENTARY,
    check_identities,
    positive_controls,
    random_generic_check,
    random_perpendicular_check,
)
from ddlab.derivtest.appendix import TIERS
from ddlab.geom import Point3, dist_sq_exact
from ddlab.metrics import (
    DistanceHistogram,
    bipartite_histogram,
    cauchy_schwarz_bound,
    check_projection_invariance,
    quadruple_count,
)


def test_perpendicular_construction_exact(criterion):
    c = criterion(1, "perpendicular construction: m+n-1 distances, closed form, float check", 1.0)
    details = []
    ok = True
    with c.timed():
        for m, n in ((2, 2), (8, 16), (16, 16)):
            params = perp_params(m, n)
            assert (params.a, params.r, params.b) == (1, 2, F(3, 2))
            cons = build_perpendicular(params)
            exact1, exact2 = cons.exact_points()
            float1, float2 = cons.float_points()
            distinct = bipartite_histogram(exact1, exact2).distinct
            closed_ok = float_ok = True
            for (j, e1), (k, e2) in itertools.product(enumerate(exact1), enumerate(exact2)):
                closed = cons.dist_sq(j, k)
                closed_ok &= dist_sq_exact(e1, e2) == closed
                numeric = sum((x - y) ** 2 for x, y in zip(float1[j], float2[k]))
                float_ok &= math.isclose(numeric, float(closed), rel_tol=1e-9)
            ok &= distinct == m + n - 1 and closed_ok and float_ok
            details.append(f"({m},{n})->{distinct}")
    ok &= c.elapsed < c.budget
    c.record(ok, ", ".join(details))
    assert ok
    c.check_budget()


def test_aligned_construction_bound(criterion):
    c = criterion(2, "aligned construction m=n=N=16: at most 9 distance classes", 1.0)
    with c.timed():
        p1, p2 = build_aligned(AlignedConstructionParams(16, 16, lattice_size=16))
        count = len(aligned_distance_classes(p1, p2))
    ok = count <= 16 // 2 + 1 <= 16 + 16 - 1 and c.elapsed < c.budget
    c.record(ok, f"{count} classes")
    assert count <= 9
    c.check_budget()


def _rational(rng, bound=20):
    return F(rng.randint(-bound, bound), rng.randint(1, 6))


def test_projection_invariance(criterion):
    c = criterion(3, "parallel-plane projection invariance, 50 instances of 10x10", 5.0)
    rng = random.Random(3)
    passed = 0
    with c.timed():
        for _ in range(50):
            height = _rational(rng) or F(1)
            first = [Point3(_rational(rng), _rational(rng), F(0)) for _ in range(10)]
            second = [Point3(_rational(rng), _rational(rng), height) for _ in range(10)]
            passed += check_projection_invariance(first, second)
    ok = passed == 50 and c.elapsed < c.budget
    c.record(ok, f"{passed}/50")
    assert passed == 50
    c.check_budget()


def test_quadruples_and_cauchy_schwarz(criterion):
    c = criterion(4, "quadruple count and Cauchy-Schwarz on 50 random histograms", 1.0)
    rng = random.Random(4)
    passed = 0
    with c.timed():
        for _ in range(50):
            entries = {F(rng.randint(1, 400), rng.randint(1, 9)): rng.randint(1, 12) for _ in range(rng.randint(1, 15))}
            h = DistanceHistogram(entries)
            # oracle: expand into the multiset of distances and count equal ordered pairs
            values = [d for d, m in entries.items() for _ in range(m)]
            brute = sum(Counter(values)[v] for v in values)
            quad = quadruple_count(h)
            passed += quad == brute == sum(m * m for m in entries.values()) and (
                F(quad) >= cauchy_schwarz_bound(h) and quad * h.distinct >= h.total**2
            )
    ok = passed == 50 and c.elapsed < c.budget
    c.record(ok, f"{passed}/50")
    assert passed == 50
    c.check_budget()


def test_positive_controls(criterion):
    c = criterion(5, "derivative test is identically zero for aligned and perpendicular", 30.0)
    with c.timed():
        controls = positive_controls()
    kinds = {ctl["kind"] for ctl in controls}
    zero = [ctl["name"] for ctl in controls if ctl["zero"]]
    ok = kinds == {"aligned", "perpendicular"} and len(zero) == len(controls) and c.elapsed < c.budget
    c.record(ok, f"{len(zero)}/{len(controls)} zero")
    assert kinds == {"aligned", "perpendicular"}
    assert len(zero) == len(controls), controls
    c.check_budget()


@pytest.mark.parametrize("ident", NUMERATORS, ids=lambda ident: ident.key)
def test_special_case_numerators(criterion, ident):
    c = criterion(6, f"special-case numerator {ident.key}", 60.0 / len(NUMERATORS))
    with c.timed():
        (outcome,) = check_identities([ident], trials=50, seed=0)
    best = outcome.best
    detail = "no tier matched" if best is None else f"{best.tier} tier, {best.regime.value}, factor {best.factor}"
    if not outcome.passed:
        corrected = [s for s in SUPPLEMENTARY if s.key.startswith(ident.key)]
        if corrected:
            (alt,) = check_identities(corrected, trials=50, seed=0)
            detail += f"; {alt.identity.key} passes: {alt.passed}"
    c.record(outcome.passed and c.elapsed < c.budget, detail)
    assert outcome.passed, detail
    c.check_budget()


def test_coefficient_identities(criterion):
    c = criterion(7, "coefficient identities, tiers with 50-trial randomized checks", 300.0)
    with c.timed():
        outcomes = check_identities(IDENTITIES, trials=50, seed=0)
    tiers = Counter(o.best.tier for o in outcomes if o.passed)
    failed = [o.identity.key for o in outcomes if not o.passed]
    assert set(tiers) <= set(TIERS)
    ok = not failed and c.elapsed < c.budget
    summary = ", ".join(f"{tier} x{n}" for tier, n in sorted(tiers.items()))
    c.record(ok, f"{len(outcomes) - len(failed)}/{len(outcomes)} passed ({summary})")
    for o in outcomes:
        print(f"  {o.identity.key}: {o.best.tier if o.passed else 'FAILED'}")
    assert not failed, failed
    c.check_budget()


def test_dichotomy_random_bindings(criterion):
    c = criterion(8, "100 generic bindings nonzero, 20 perpendicular bindings zero", 300.0)
    rng = random.Random(8)
    with c.timed():
        generic = random_generic_check(100, rng)
        perpendicular = random_perpendicular_check(20, rng)
    ok = generic["nonzero"] == 100 and perpendicular["zero"] == 20 and c.elapsed < c.budget
    c.record(ok, f"generic nonzero {generic['nonzero']}/100, perpendicular zero {perpendicular['zero']}/20")
    assert generic["passed"] and generic["nonzero"] == 100
    assert perpendicular["passed"] and perpendicular["zero"] == 20
    c.check_budget()


def test_engine_property_suite(criterion):
    c = criterion(9, f"engine property suite, {engine.CASES} cases per property", 30.0)
    properties = (
        engine.test_ring_axioms,
        engine.test_product_rule_and_linearity,
        engine.test_mixed_partials_commute,
        engine.test_reduce_idempotent_and_homomorphic,
        engine.test_eval_commutes_with_reduce,
        engine.test_cancellation_preserves_values,
    )
    failures = []
    with c.timed():
        for prop in properties:
            try:
                prop()
            except AssertionError as exc:
                failures.append(f"{prop.__name__}: {exc}")
    ok = engine.CASES >= 1000 and not failures and c.elapsed < c.budget
    c.record(ok, f"{len(properties) - len(failures)}/{len(properties)} properties")
    assert not failures, failures
    c.check_budget()


def _ddlab_command():
    exe = shutil.which("ddlab")
    return [exe] if exe else [sys.executable, "-m", "ddlab.cli"]


def test_verify_appendix_deterministic(criterion):
    c = criterion(10, "ddlab verify-appendix --seed 7 is byte-identical across runs", 600.0)
    with c.timed():
        runs = [subprocess.run(_ddlab_command() + ["verify-appendix", "--seed", "7"], capture_output=True) for _ in range(2)]
    first, second = runs
    ok = first.stdout == second.stdout and first.returncode == second.returncode and len(first.stdout) > 0
    c.record(ok, f"{len(first.stdout)} bytes, exit {first.returncode}")
    assert first.stdout and first.stdout == second.stdout
    assert first.returncode == second.returncode
