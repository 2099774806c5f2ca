"""Empirical pairing and the pivot bootstrap."""

import math

import numpy as np
import pytest

from twopoint import (ZeroMeanMeasure, bootstrap_ci, denominator,
                      empirical_partners, pivot)
from twopoint.errors import (BadLambda, BadLevel, ConstantSample,
                             EmptySample, InputError, TooFewResamples)


class TestPartners:
    def test_small_exact(self):
        ep = empirical_partners([3.0, -1.0, -1.0, -1.0], recentre=False)
        assert list(ep.partners) == [-1.0, 3.0, 3.0, 3.0]
        assert list(ep.widths) == [4.0] * 4
        assert list(ep.products) == [3.0] * 4

    def test_matches_measure_pairing(self):
        # on a balanced tied sample the empirical partner of each value
        # is its mirror image, exactly as under the fitted law
        xs = [-2.0, -1.0, -1.0, 1.0, 1.0, 2.0]
        ep = empirical_partners(xs, recentre=False)
        assert list(ep.partners) == [2.0, 1.0, 1.0, -1.0, -1.0, -2.0]
        mu = ZeroMeanMeasure.from_samples(xs)
        assert float(mu.m) == pytest.approx(2.0 / 3.0)

    def test_permutation_equivariant(self, rng):
        xs = rng.normal(size=31)
        perm = rng.permutation(31)
        ep1 = empirical_partners(xs)
        ep2 = empirical_partners(xs[perm])
        assert np.allclose(ep1.partners[perm], ep2.partners)

    def test_zero_stays_zero(self):
        ep = empirical_partners([-1.0, 0.0, 1.0], recentre=False)
        assert ep.partners[1] == 0.0

    def test_recentring_default(self):
        ep = empirical_partners([1.0, 2.0, 3.0, 6.0])
        assert ep.values.sum() == pytest.approx(0.0, abs=1e-12)

    def test_input_checks(self):
        with pytest.raises(EmptySample):
            empirical_partners([])
        with pytest.raises(ConstantSample):
            denominator([2.0, 2.0, 2.0])
        with pytest.raises(ConstantSample):
            bootstrap_ci([2.0] * 30, seed=1, resamples=150)
        with pytest.raises(InputError):
            empirical_partners([1.0, math.inf])


class TestPivot:
    def test_width_denominator(self):
        assert denominator([3.0, -1.0, -1.0, -1.0]) == pytest.approx(4.0)

    def test_product_denominator(self):
        xs = [3.0, -1.0, -1.0, -1.0]
        ep = empirical_partners(xs)
        lam = 1.5
        want = float((np.abs(ep.values * ep.partners) ** lam).sum()) \
            ** (1.0 / (2.0 * lam))
        assert denominator(xs, kind="Y_lambda", lam=lam) == \
            pytest.approx(want)

    def test_linear_in_theta(self, rng):
        xs = rng.normal(size=40)
        den = denominator(xs)
        p0 = pivot(xs, 0.0)
        p1 = pivot(xs, 0.3)
        assert p0 - p1 == pytest.approx(40 * 0.3 / den, rel=1e-12)

    def test_kind_checks(self):
        with pytest.raises(InputError):
            pivot([1.0, -1.0], 0.0, kind="Z")
        with pytest.raises(BadLambda):
            pivot([1.0, -1.0], 0.0, kind="Y_lambda", lam=0.0)


class TestBootstrap:
    def test_reproducible(self, rng):
        xs = rng.exponential(size=80) - 1.0
        a = bootstrap_ci(xs, resamples=300, seed=4)
        b = bootstrap_ci(xs, resamples=300, seed=4)
        c = bootstrap_ci(xs, resamples=300, seed=5)
        assert a.ci == b.ci
        assert a.ci != c.ci

    def test_interval_brackets_mean(self, rng):
        xs = rng.normal(loc=0.0, size=120)
        run = bootstrap_ci(xs, resamples=500, seed=11)
        lo, hi = run.ci
        assert lo < xs.mean() < hi
        assert run.level == 0.95
        assert run.kind == "W"

    def test_product_kind(self, rng):
        xs = rng.normal(size=60)
        run = bootstrap_ci(xs, resamples=300, kind="Y_lambda", lam=1.2,
                           seed=3)
        lo, hi = run.ci
        assert lo < hi

    def test_jsonable(self, rng):
        xs = rng.normal(size=30)
        data = bootstrap_ci(xs, resamples=150, seed=2).to_jsonable()
        assert set(data) >= {"ci", "kind", "level", "n", "resamples",
                             "seed"}

    def test_parameter_checks(self, rng):
        xs = rng.normal(size=30)
        with pytest.raises(BadLevel):
            bootstrap_ci(xs, level=1.2, seed=1)
        with pytest.raises(TooFewResamples):
            bootstrap_ci(xs, resamples=50, seed=1)
