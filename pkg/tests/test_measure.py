"""The cumulative curve, its inverses, and the randomized pairing."""

import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twopoint import INF, NEG_INF, ZeroMeanMeasure
from twopoint.errors import (BadMass, DegenerateAtZero, EmptySample,
                             ConstantSample, InputError, NegativeH,
                             NonZeroMean)


class TestConstruction:
    def test_exact_atoms(self, four_atom):
        assert four_atom.is_exact
        assert four_atom.m == F(1, 2)
        assert four_atom.prob_zero == F(1, 10)
        assert four_atom.prob_positive == F(2, 5)
        assert four_atom.prob_negative == F(1, 2)

    def test_float_atoms_not_exact(self):
        mu = ZeroMeanMeasure.from_atoms([(-1.0, 0.5), (1.0, 0.5)])
        assert not mu.is_exact
        assert float(mu.m) == 0.5

    def test_duplicate_atoms_merge(self):
        mu = ZeroMeanMeasure.from_atoms(
            [(-1, "1/4"), (-1, "1/4"), (1, "1/2")])
        assert dict(mu.atoms)[F(-1)] == F(1, 2)

    def test_nonzero_mean_rejected(self):
        with pytest.raises(NonZeroMean):
            ZeroMeanMeasure.from_atoms([(-1, "1/4"), (1, "3/4")])

    def test_recentre_fixes_mean(self):
        mu = ZeroMeanMeasure.from_atoms([(0, "1/2"), (1, "1/2")],
                                        recentre=True)
        assert dict(mu.atoms) == {F(-1, 2): F(1, 2), F(1, 2): F(1, 2)}

    def test_bad_masses(self):
        with pytest.raises(BadMass):
            ZeroMeanMeasure.from_atoms([(-1, "1/2"), (1, "1/4")])
        with pytest.raises(BadMass):
            ZeroMeanMeasure.from_atoms([(-1, -0.5), (1, 1.5)])

    def test_degenerate_at_zero(self):
        with pytest.raises(DegenerateAtZero):
            ZeroMeanMeasure.from_atoms([(0, 1)])

    def test_empty(self):
        with pytest.raises(EmptySample):
            ZeroMeanMeasure.from_atoms([])
        with pytest.raises(EmptySample):
            ZeroMeanMeasure.from_samples([])

    def test_constant_samples(self):
        with pytest.raises(ConstantSample):
            ZeroMeanMeasure.from_samples([3, 3, 3])

    def test_from_samples_recentres(self):
        mu = ZeroMeanMeasure.from_samples([1, 2, 3, 6])
        assert mu.is_exact
        assert dict(mu.atoms)[F(-2)] == F(1, 4)
        assert mu.m == F(3, 4)


class TestCurve:
    def test_g_values(self, four_atom):
        g = four_atom.g
        assert g(F(1, 2)) == 0
        assert g(1) == F(3, 10)
        assert g(F(3, 2)) == F(3, 10)
        assert g(2) == F(1, 2)
        assert g(10) == F(1, 2)
        assert g(INF) == F(1, 2)
        assert g(F(-1, 2)) == 0
        assert g(-1) == F(1, 2)
        assert g(NEG_INF) == F(1, 2)

    def test_g_tilde_interpolates(self, four_atom):
        gt = four_atom.g_tilde
        assert gt(1, 0) == 0
        assert gt(1, 1) == F(3, 10)
        assert gt(1, F(1, 2)) == F(3, 20)
        assert gt(2, F(1, 2)) == F(2, 5)
        assert gt(-1, F(1, 2)) == F(1, 4)
        # off-atom points carry no jump
        assert gt(F(3, 2), F(1, 4)) == F(3, 10)

    def test_inverses(self, four_atom):
        xp, xm = four_atom.x_plus, four_atom.x_minus
        assert xp(0) == 0 and xm(0) == 0
        assert xp(F(1, 5)) == 1
        assert xp(F(3, 10)) == 1
        assert xp(F(31, 100)) == 2
        assert xp(F(1, 2)) == 2
        assert xp(F(51, 100)) == INF
        assert xm(F(1, 5)) == -1
        assert xm(F(1, 2)) == -1
        assert xm(F(51, 100)) == NEG_INF

    def test_negative_h_rejected(self, four_atom):
        with pytest.raises(NegativeH):
            four_atom.x_plus(-0.1)

    def test_h_identity_exact(self, four_atom):
        for k in range(11):
            h = F(k, 10)
            assert four_atom.h_plus(h) == min(h, four_atom.m)
            assert four_atom.h_minus(h) == min(h, four_atom.m)

    def test_nan_rejected(self, four_atom):
        with pytest.raises(InputError):
            four_atom.g(float("nan"))


class TestPairing:
    def test_displayed_partner_of_minus_one(self, four_atom):
        r = four_atom.reciprocate
        assert r(-1, F(1, 10)) == 1
        assert r(-1, F(3, 5)) == 1
        assert r(-1, F(3, 5) + F(1, 1000)) == 2
        assert r(-1, 1) == 2

    def test_other_partners(self, four_atom):
        r = four_atom.reciprocate
        for u in (F(1, 4), F(1, 2), 1):
            assert r(1, u) == -1
            assert r(2, u) == -1
            assert r(0, u) == 0

    def test_regularize_is_identity_off_zero_u(self, four_atom):
        for loc, _ in four_atom.atoms:
            for u in (F(1, 100), F(1, 2), 1):
                assert four_atom.regularize(loc, u) == loc

    def test_u_zero_boundary(self, four_atom):
        # at u = 0 the level collapses to the open end of the atom's
        # span, which belongs to the next atom inward
        assert four_atom.reciprocate(-1, 0) == 0
        assert four_atom.regularize(1, 0) == 0

    @given(st.integers(1, 999))
    def test_v_map_involution(self, num):
        mu = ZeroMeanMeasure.from_atoms(
            [(-1, "5/10"), (0, "1/10"), (1, "3/10"), (2, "1/10")])
        u = F(num, 1000)
        for loc, _ in mu.atoms:
            r = mu.reciprocate(loc, u)
            v = mu.v_map(loc, u)
            assert 0 <= v <= 1
            assert mu.reciprocate(r, v) == mu.regularize(loc, u)

    def test_u_segments_partition(self, four_atom):
        for loc, _ in four_atom.atoms:
            segs = four_atom.u_segments(loc)
            lo = F(0)
            for start, stop, partner in segs:
                assert start == lo
                mid = (start + stop) / 2
                assert four_atom.reciprocate(loc, mid) == partner
                lo = stop
            assert lo == 1


class TestDistribution:
    def test_cdf(self, four_atom):
        cdf = four_atom.cdf
        assert cdf(-2) == 0
        assert cdf(-1) == F(1, 2)
        assert cdf(0) == F(3, 5)
        assert cdf(1) == F(9, 10)
        assert cdf(2) == 1
        assert four_atom.cdf_left(-1) == 0
        assert four_atom.cdf_left(2) == F(9, 10)

    def test_f_tilde(self, four_atom):
        ft = four_atom.f_tilde
        assert ft(-1, 0) == 0
        assert ft(-1, 1) == F(1, 2)
        assert ft(2, F(1, 2)) == F(19, 20)

    def test_symmetry_flag(self, four_atom, symmetric_four):
        assert not four_atom.is_symmetric()
        assert symmetric_four.is_symmetric()

    def test_sampling(self, four_atom, rng):
        draws = four_atom.sample(4000, rng)
        vals, counts = np.unique(draws, return_counts=True)
        assert set(vals) <= {-1.0, 0.0, 1.0, 2.0}
        assert abs(counts[vals == -1.0][0] / 4000 - 0.5) < 0.05

    def test_json_round_trip(self, four_atom):
        back = ZeroMeanMeasure.from_jsonable(four_atom.to_jsonable())
        assert back.atoms == four_atom.atoms
        assert back.is_exact

    def test_json_rejects_strings_inward(self):
        with pytest.raises(InputError):
            ZeroMeanMeasure.from_jsonable(
                {"backend": "discrete", "atoms": [["inf", 0.5], [1, 0.5]]})


class TestAnalytic:
    def test_uniform_inverses(self):
        # uniform on [-1, 1]: G(x) = x^2 / 4 on either side
        mu = ZeroMeanMeasure.analytic(lambda x: x * x / 4.0, 0.25,
                                      (-1.0, 1.0))
        assert abs(mu.x_plus(0.04) - 0.4) < 1e-9
        assert abs(mu.x_minus(0.04) + 0.4) < 1e-9
        for x in (-0.8, -0.3, 0.2, 0.9):
            assert abs(mu.reciprocate(x, 0.5) + x) < 1e-6

    def test_shifted_exponential(self):
        # unit exponential shifted to mean zero
        def g(x):
            return math.exp(-1.0) * (1.0 - (1.0 + x) * math.exp(-x)) \
                if x >= -1.0 else 0.0

        m = math.exp(-1.0)
        mu = ZeroMeanMeasure.analytic(g, m, (-1.0, INF))
        assert abs(mu.x_plus(g(2.0)) - 2.0) < 1e-6
        r = mu.reciprocate(2.0, 0.5)
        assert -1.0 < r < 0.0
        assert abs(mu.reciprocate(r, 0.5) - 2.0) < 1e-5
        # levels above the reach of the positive side
        assert mu.x_plus(m * (1 + 1e-6)) == INF

    def test_symmetric_probe(self):
        mu = ZeroMeanMeasure.analytic(lambda x: x * x / 4.0, 0.25,
                                      (-1.0, 1.0))
        assert mu.is_symmetric()
