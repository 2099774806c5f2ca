"""Extremality of the canonical pairing among sign disintegrations."""

from fractions import Fraction as F

import pytest

from twopoint import (AlternativeDisintegration, ZeroMeanMeasure,
                      abs_sum_pow, alternative_disintegration,
                      canonical_cost, canonical_disintegration,
                      comonotone_extremality, cost_compare, cost_from_spec,
                      custom_cost, indicator_ge, marginal_check,
                      neg_abs_diff_pow, norm_report, ratio_pow,
                      tilted_weights, two_point)
from twopoint.errors import (BadP, NotADisintegration, NotSuperadditive,
                             OptimalityViolated, UnsupportedMarginals)


@pytest.fixture
def alt(symmetric_four):
    return alternative_disintegration(
        symmetric_four,
        [("3/10", -2, 1), ("3/10", -1, 2), ("4/10", -1, 1)])


class TestDisintegrations:
    def test_canonical_weights(self, symmetric_four):
        can = canonical_disintegration(symmetric_four)
        got = {(law.a, law.b): w for w, law in can}
        assert got == {(F(-1), F(1)): F(4, 5), (F(-2), F(2)): F(1, 5)}

    def test_tilted_weights(self, symmetric_four, alt):
        can = canonical_disintegration(symmetric_four)
        nus = tilted_weights(can, symmetric_four.m)
        by_pair = {(law.a, law.b): nu
                   for nu, (_w, law) in zip(nus, can.components)}
        assert by_pair == {(F(-1), F(1)): F(2, 3), (F(-2), F(2)): F(1, 3)}
        assert tuple(tilted_weights(alt)) == (F(1, 3), F(1, 3), F(1, 3))

    def test_marginals_pass_for_honest_alternative(self, symmetric_four,
                                                   alt):
        rep = marginal_check(symmetric_four, alt)
        assert rep.passed
        assert rep.discrepancy == 0.0

    def test_marginals_fail_for_fake(self, symmetric_four):
        fake = AlternativeDisintegration(((F(1, 2), two_point(-1, 1)),
                                          (F(1, 2), two_point(-2, 2))))
        rep = marginal_check(symmetric_four, fake)
        assert not rep.passed
        assert rep.discrepancy > 0.0

    def test_rejects_bad_weights(self, symmetric_four):
        with pytest.raises(NotADisintegration):
            alternative_disintegration(symmetric_four,
                                       [("1/2", -1, 1), ("1/2", -2, 2)])
        with pytest.raises(NotADisintegration):
            alternative_disintegration(symmetric_four, [("3/10", -2, 1)])
        with pytest.raises(NotADisintegration):
            alternative_disintegration(symmetric_four,
                                       [("0", -2, 1), ("1", -1, 1)])

    def test_jsonable(self, alt):
        data = alt.to_jsonable()
        assert len(data["components"]) == 3


class TestCostFunctions:
    def test_power_floor(self):
        with pytest.raises(BadP):
            neg_abs_diff_pow(0.5)
        with pytest.raises(BadP):
            abs_sum_pow(0)

    def test_custom_probe(self):
        good = custom_cost(lambda u, v: u * v, "max")
        assert good(2.0, 3.0) == 6.0
        with pytest.raises(NotSuperadditive):
            custom_cost(lambda u, v: -u * v, "max")

    def test_from_spec(self):
        cost = cost_from_spec({"kind": "ratio_pow", "p": 2,
                               "side": "neg_over_pos"})
        assert cost.label == "ratio_pow(2, neg_over_pos)"
        assert cost_from_spec({"kind": "indicator_ge",
                               "a": 1, "b": 2}).canonical_is == "max"


class TestComparisons:
    def test_difference_cost_strict(self, symmetric_four, alt):
        cmp = cost_compare(symmetric_four, neg_abs_diff_pow(1), alt)
        assert cmp.canonical == 0
        assert cmp.alternative == F(-2, 3)
        assert cmp.satisfied

    def test_indicator_cost(self, symmetric_four, alt):
        cmp = cost_compare(symmetric_four, indicator_ge(2, 2), alt)
        assert (cmp.canonical, cmp.alternative) == (F(1, 3), 0)
        assert cmp.satisfied

    def test_ratio_cost_minimized(self, symmetric_four, alt):
        cmp = cost_compare(symmetric_four, ratio_pow(1), alt)
        assert cmp.canonical == 1
        assert cmp.alternative == F(7, 6)
        assert cmp.satisfied

    def test_sum_cost_tie(self, symmetric_four, alt):
        cmp = cost_compare(symmetric_four, abs_sum_pow(1), alt)
        assert cmp.canonical == cmp.alternative == F(8, 3)
        assert cmp.satisfied

    def test_sum_cost_square(self, symmetric_four, alt):
        cmp = cost_compare(symmetric_four, abs_sum_pow(2), alt)
        assert cmp.canonical == 8
        assert cmp.alternative == F(22, 3)
        assert cmp.satisfied

    def test_panel(self, symmetric_four, alt):
        rep = norm_report(symmetric_four, alt)
        assert rep.passed
        assert len(rep.rows) == 5
        assert {row.direction for row in rep.rows} == {"max", "min"}

    def test_enforce(self, symmetric_four, alt):
        wrong_way = custom_cost(lambda u, v: u * v, "min", check=False)
        cmp = cost_compare(symmetric_four, wrong_way, alt)
        assert not cmp.satisfied
        with pytest.raises(OptimalityViolated):
            cost_compare(symmetric_four, wrong_way, alt, enforce=True)

    def test_analytic_canonical(self):
        mu = ZeroMeanMeasure.analytic(lambda x: x * x / 4.0, 0.25,
                                      (-1.0, 1.0))
        # canonical pairs x with -x, so E(|Y1| + |Y2|) = 2 E|X| / (2m) * m
        assert canonical_cost(mu, abs_sum_pow(1)) == pytest.approx(4.0 / 3.0,
                                                                   abs=1e-9)

    def test_jsonable(self, symmetric_four, alt):
        data = cost_compare(symmetric_four, abs_sum_pow(1),
                            alt).to_jsonable()
        assert data["satisfied"] is True


class TestComonotone:
    def test_superadditive_max(self):
        rep = comonotone_extremality([1, 2, 3, 4], [1, 1, 2, 5],
                                     neg_abs_diff_pow(2))
        assert rep.passed
        assert rep.permutations == 24

    def test_ratio_min(self):
        assert comonotone_extremality([1, 2, 3], [1, 2, 4],
                                      ratio_pow(1)).passed

    def test_all_builtins_small(self):
        pos = [1, 2, 5]
        neg = [1, 3, 4]
        for cost in (neg_abs_diff_pow(1), abs_sum_pow(2), indicator_ge(3, 3),
                     ratio_pow(2, side="neg_over_pos")):
            assert comonotone_extremality(pos, neg, cost).passed, cost.label

    def test_limits(self):
        with pytest.raises(UnsupportedMarginals):
            comonotone_extremality([1] * 8, [1] * 8, ratio_pow(1))
        with pytest.raises(UnsupportedMarginals):
            comonotone_extremality([1, 2], [1], ratio_pow(1))
        with pytest.raises(UnsupportedMarginals):
            comonotone_extremality([], [], ratio_pow(1))
