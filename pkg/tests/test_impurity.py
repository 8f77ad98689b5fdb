"""Impurity function family: built-in specs, custom specs, concavity."""

import math

import numpy as np
import pytest

from impuritypart import (
    ConcavityViolation,
    MissingL,
    compute_stats,
    custom_spec,
    entropy_spec,
    gini_spec,
    lower_bound,
)

from helpers import random_joint, random_partition


class TestEntropySpec:
    def test_known_values(self):
        f = entropy_spec()
        assert f.f(0.5) == 0.5
        assert f.f(1.0) == 0.0
        assert f.f(0.0) == 0.0

    def test_f_is_x_times_l(self):
        f = entropy_spec()
        assert f.f(0.25) / 0.25 - f.l(0.25) == 0.0
        for x in np.arange(0.01, 1.0, 0.01):
            assert abs(f.f(x) - x * f.l(x)) <= 1e-12

    def test_array_matches_scalar(self):
        f = entropy_spec()
        xs = np.array([0.0, 1e-12, 0.3, 0.5, 1.0])
        np.testing.assert_allclose(f.f_values(xs),
                                   [f.f(x) for x in xs], atol=0)


class TestGiniSpec:
    def test_known_values(self):
        f = gini_spec()
        assert f.f(0.5) == 0.25
        assert f.f(0.0) == 0.0
        assert f.f(1.0) == 0.0
        assert 4 * f.f(0.25) == 0.75

    def test_f_is_x_times_l(self):
        f = gini_spec()
        assert f.f(0.3) - 0.3 * f.l(0.3) == 0.0
        for x in np.arange(0.01, 1.0, 0.01):
            assert abs(f.f(x) - x * f.l(x)) <= 1e-12


@pytest.mark.parametrize("spec", [entropy_spec(), gini_spec()],
                         ids=["entropy", "gini"])
class TestConcaveFamilyProperties:
    def test_concavity_on_random_triples(self, spec):
        rng = np.random.default_rng(11)
        a, b, lam = rng.random((3, 2000))
        lhs = np.array([spec.f(v) for v in lam * a + (1 - lam) * b])
        rhs = lam * np.array([spec.f(v) for v in a]) \
            + (1 - lam) * np.array([spec.f(v) for v in b])
        assert (lhs >= rhs - 1e-12).all()

    def test_l_non_increasing(self, spec):
        xs = np.arange(0.001, 1.0001, 0.001)
        ls = np.array([spec.l(x) for x in xs])
        assert (np.diff(ls) <= 1e-12).all()

    def test_averaging_never_loses(self, spec):
        # k * f(mean) >= sum of f values, the concave averaging inequality
        rng = np.random.default_rng(12)
        for _ in range(200):
            k = int(rng.integers(2, 8))
            t = rng.random(k)
            lhs = k * spec.f(t.sum() / k)
            rhs = sum(spec.f(v) for v in t)
            assert lhs >= rhs - 1e-12


class TestCustomSpec:
    def test_matches_gini_supplied_directly(self):
        custom = custom_spec(lambda x: x * (1.0 - x), l=lambda x: 1.0 - x)
        gini = gini_spec()
        rng = np.random.default_rng(13)
        jd = random_joint(rng, 6, 3)
        part = random_partition(rng, 6, 3)
        a = compute_stats(jd, part, custom)
        b = compute_stats(jd, part, gini)
        assert abs(a.impurity - b.impurity) <= 1e-12
        assert a.e_q == b.e_q

    def test_convex_function_rejected(self):
        with pytest.raises(ConcavityViolation) as info:
            custom_spec(lambda x: x * x)
        # the error names the violating triple
        assert info.value.a is not None and info.value.lam is not None

    def test_sqrt_based_function_accepted(self):
        f = lambda x: math.sqrt(x) * (1.0 - math.sqrt(x))
        # independent concavity evidence: central second differences <= 0
        h = 1e-4
        for x in np.arange(0.01, 0.99, 0.01):
            assert f(x - h) - 2 * f(x) + f(x + h) <= 1e-12
        spec = custom_spec(f)
        assert spec.kind == "custom"
        assert spec.f(0.25) == f(0.25)

    def test_missing_l_blocks_ratio_operations(self):
        spec = custom_spec(lambda x: x * (1.0 - x))
        with pytest.raises(MissingL):
            lower_bound(0.5, spec)

    def test_hand_built_spec_vectorizes_lazily(self):
        from impuritypart import ImpuritySpec
        spec = ImpuritySpec(kind="custom", f=lambda x: x * (1.0 - x))
        np.testing.assert_allclose(spec.f_values(np.array([0.2, 0.5])),
                                   [0.16, 0.25])
