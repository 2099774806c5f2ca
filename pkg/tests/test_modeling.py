"""Curve families, pattern round trips, and the two validators."""

import math

import numpy as np
import pytest

from twopoint import (AsymmetryPattern, ReciprocatingCurve, curve_table,
                      cubic_rate_family, family_from_spec,
                      from_asymmetry_pattern, asymmetry_pattern_of,
                      hyperbolic_family, power_family, two_slope_family,
                      validate_curve, validate_x_pm)
from twopoint.errors import (BadAlpha, BadScale, CharacterizationFailed,
                             InputError, Lip1Violated, NotValidCurve)

INF = math.inf


def involution_gap(curve, xs):
    worst = 0.0
    for x in xs:
        r = curve(x)
        if curve.a_minus < r < curve.a_plus:
            worst = max(worst, abs(curve(r) - x))
    return worst


class TestPowerFamily:
    def test_linear_member(self):
        cv = power_family(1.0, 2.0)
        for x in (-3.0, -0.25, 0.0, 1.0, 7.5):
            assert cv(x) == pytest.approx(-x, abs=1e-15)

    def test_quadratic_member(self):
        cv = power_family(2.0, 1.0)
        # closed form -((1 + x)^2 - 1)/2 on the right branch
        assert cv(1.0) == pytest.approx(-1.5)
        assert cv(-0.5) == pytest.approx(math.sqrt(2.0) - 1.0)
        assert cv(cv(1.0)) == pytest.approx(1.0, abs=1e-12)

    def test_negative_exponent_domain(self):
        cv = power_family(-1.0, 1.5)
        assert cv.a_minus == -1.5
        assert cv.a_plus == INF
        assert cv(1.0) == pytest.approx(-0.6)
        assert cv(-1.5) == INF
        assert cv(-2.0) == INF

    def test_log_member(self):
        cv = power_family(0.0, 1.0)
        assert cv(1.0) == pytest.approx(-math.log(2.0))
        assert cv(-0.5) == pytest.approx(math.e ** 0.5 - 1.0)

    def test_exponential_tags(self):
        fast = family_from_spec({"family": "power", "p": "inf", "c": 1.0})
        assert fast(1.0) == pytest.approx(-(math.e - 1.0))
        assert (fast.a_minus, fast.a_plus) == (-INF, INF)
        slow = family_from_spec({"family": "power", "p": "-inf", "c": 1.0})
        assert slow.a_minus == -1.0
        assert slow(1.0) == pytest.approx(-(1.0 - math.e ** -1.0))
        # saturates toward the finite endpoint
        assert slow(40.0) == pytest.approx(-1.0, abs=1e-12)

    def test_bad_scale(self):
        with pytest.raises(BadScale):
            power_family(1.0, 0.0)
        with pytest.raises(BadScale):
            power_family(2.0, -1.0)


class TestTwoSlope:
    def test_values(self):
        cv = two_slope_family(2.0)
        assert cv(1.0) == -0.5
        assert cv(-1.0) == 2.0
        assert not cv.smooth_at_zero
        assert two_slope_family(1.0).smooth_at_zero

    def test_kink_fails_derivative_check(self):
        rep = validate_curve(two_slope_family(2.0), check_derivative=True)
        assert not rep.passed
        assert any("slope" in f for f in rep.failures)
        rep = validate_curve(two_slope_family(2.0), check_derivative=False)
        assert rep.passed, rep.failures


class TestHyperbolic:
    def test_symmetric_member(self):
        cv = hyperbolic_family(0.0, 1.3)
        for x in (-2.0, 0.5, 4.0):
            assert cv(x) == pytest.approx(-x, abs=1e-12)

    def test_pattern_relation(self):
        # the family is generated by a(w) = alpha w^2 / (c + w)
        for alpha in (0.5, 0.999):
            cv = hyperbolic_family(alpha, 1.0)
            for x in (0.3, 1.0, 2.5, 6.0):
                w = x - cv(x)
                a = x + cv(x)
                assert a == pytest.approx(alpha * w * w / (1.0 + w),
                                          abs=1e-10)

    def test_end_members(self):
        hi = hyperbolic_family(1.0, 1.3)
        assert hi.a_minus == pytest.approx(-0.65)
        assert hi.a_plus == INF
        lo = hyperbolic_family(-1.0, 1.3)
        assert lo.a_plus == pytest.approx(0.65)
        assert lo.a_minus == -INF
        assert involution_gap(hi, [0.1, 0.5, 2.0, -0.3]) < 1e-9

    def test_bad_alpha(self):
        with pytest.raises(BadAlpha):
            hyperbolic_family(1.5, 1.0)


class TestCubicRate:
    def test_symmetric_member(self):
        cv = cubic_rate_family(0.0, 0.9)
        assert cv(2.0) == pytest.approx(-2.0, abs=1e-10)

    def test_asymptotic_offset(self):
        alpha, c = 0.5, 0.9
        cv = cubic_rate_family(alpha, c)
        amp = 8.0 * alpha * c / (3.0 * math.sqrt(3.0))
        assert cv(800.0) + 800.0 == pytest.approx(amp, abs=1e-5)
        assert cv(-800.0) - 800.0 == pytest.approx(amp, abs=1e-5)


class TestValidateCurve:
    def test_good_curve_report(self):
        rep = validate_curve(power_family(2.0, 1.0))
        assert rep.passed
        assert rep.involution_error < 1e-9
        assert rep.derivative_at_zero == pytest.approx(-1.0, abs=1e-4)
        data = rep.to_jsonable()
        assert data["passed"] is True

    def test_flat_curve_rejected(self):
        flat = ReciprocatingCurve(-INF, INF, lambda x: -1.0, "flat", True)
        rep = validate_curve(flat, check_derivative=False)
        assert not rep.passed
        assert any("decreasing" in f or "zero" in f for f in rep.failures)

    def test_non_involution_rejected(self):
        cube = ReciprocatingCurve(-INF, INF, lambda x: -x ** 3, "cube", True)
        rep = validate_curve(cube, check_derivative=False)
        assert not rep.passed
        assert any("involution" in f for f in rep.failures)

    def test_nan_query(self):
        with pytest.raises(InputError):
            power_family(1.0, 1.0)(math.nan)

    def test_clamping(self):
        cv = power_family(-1.0, 1.0)
        assert cv(-5.0) == INF
        slow = family_from_spec({"family": "power", "p": "-inf", "c": 2.0})
        assert slow(INF) == -2.0


class TestPatterns:
    def test_round_trip(self):
        cv = hyperbolic_family(0.5, 1.0)
        pat = asymmetry_pattern_of(cv)
        for w in (0.4, 1.0, 3.0):
            assert pat.a(w) == pytest.approx(0.5 * w * w / (1.0 + w),
                                             abs=1e-8)
        back = from_asymmetry_pattern(pat, validate=False)
        for x in (0.2, 1.0, 4.0, -0.4):
            assert back(x) == pytest.approx(cv(x), abs=1e-8)

    def test_coordinates(self):
        pat = AsymmetryPattern(lambda w: 0.0, -INF, INF)
        assert pat.xi(2.0) == 1.0
        assert pat.rho(2.0) == 1.0
        assert pat.width_bound == INF

    def test_lip1_rejected(self):
        with pytest.raises(Lip1Violated):
            from_asymmetry_pattern(AsymmetryPattern(lambda w: w, -INF, INF))

    def test_inconsistent_curve_rejected(self):
        cube = ReciprocatingCurve(-INF, INF, lambda x: -x ** 3, "cube", True)
        with pytest.raises(NotValidCurve):
            asymmetry_pattern_of(cube)

    def test_table(self):
        cv = power_family(1.0, 1.0)
        rows = curve_table(cv, [0.0, 1.0, -2.0])
        assert rows == [(0.0, -0.0), (1.0, -1.0), (-2.0, 2.0)] or \
            rows == [(0.0, 0.0), (1.0, -1.0), (-2.0, 2.0)]


class TestInverseCharacterization:
    def test_worked_example(self):
        rep = validate_x_pm(lambda h: 3.0 / (1.0 - h), lambda h: -3.0, 1.0)
        assert rep.valid
        assert rep.mass_at_zero == pytest.approx(0.5, abs=1e-9)
        expect = {-4.0: 0.0, -3.0: 1.0 / 3.0, -1.0: 1.0 / 3.0,
                  0.0: 5.0 / 6.0, 1.0: 5.0 / 6.0, 3.0: 5.0 / 6.0,
                  4.0: 1.0 - 3.0 / 32.0, 10.0: 0.985}
        for x, want in expect.items():
            assert rep.cdf(x) == pytest.approx(want, abs=1e-9)

    def test_measure_is_usable(self):
        rep = validate_x_pm(lambda h: 3.0 / (1.0 - h), lambda h: -3.0, 1.0)
        mu = rep.measure
        assert float(mu.m) == pytest.approx(1.0, abs=1e-9)
        assert float(mu.x_minus(0.5)) == pytest.approx(-3.0, abs=1e-9)

    @pytest.mark.parametrize("yp,ym,msg", [
        (lambda h: -1.0, lambda h: -3.0, "positive"),
        (lambda h: 3.0, lambda h: 2.0, "negative"),
        (lambda h: 3.0 - 2.0 * h, lambda h: -3.0, "nondecreasing"),
        (lambda h: 0.5, lambda h: -0.5, "mass integral"),
    ])
    def test_violations(self, yp, ym, msg):
        with pytest.raises(CharacterizationFailed, match=msg):
            validate_x_pm(yp, ym, 1.0)
