from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sncover.characters import partitions_of
from sncover.diagram import Partition, row, staircase
from sncover.errors import InvalidArgumentError
from sncover.kronecker import Support, product_support
from sncover.plancherel_cover import (
    MeasuredSupport,
    affine_counterexample_demo,
    format_fraction,
    monotonicity_check,
    monotonicity_sweep,
    pigeonhole_check,
    pigeonhole_sweep,
    plancherel_measure,
    saxl_measure_trend,
)

P = Partition.parse


def full(n):
    return Support.of(partitions_of(n))


class TestMeasure:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_full_support_has_measure_one(self, n):
        assert plancherel_measure(full(n)) == 1

    def test_trivial_only(self):
        assert plancherel_measure(Support.of([row(5)])) == Fraction(1, 120)

    def test_saxl_square_has_measure_one(self):
        rho = staircase(3)
        assert plancherel_measure(product_support([rho, rho])) == 1

    def test_measured_support_formatting(self):
        m = MeasuredSupport.of(Support.parse("[3];[2,1]"))
        assert m.measure == "5/6"
        assert m.measure_float == pytest.approx(5 / 6)
        assert format_fraction(Fraction(2, 4)) == "1/2"


class TestPigeonhole:
    def test_full_supports_pass(self):
        report = pigeonhole_check(full(5), full(5))
        assert report.outcome == "pass"
        assert report.product_covers

    def test_small_supports_not_applicable(self):
        report = pigeonhole_check(Support.of([row(4)]), Support.of([row(4)]))
        assert report.outcome == "not-applicable"
        assert report.measure_sum == "1/12"
        assert report.product_covers is None

    def test_mismatched_n(self):
        with pytest.raises(InvalidArgumentError):
            pigeonhole_check(full(3), full(4))

    def test_sweep_small(self):
        summary = pigeonhole_sweep(5, 300, seed=1)
        assert summary.passed
        assert summary.applicable > 0
        assert summary.provenance.seed == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [6, 7])
    def test_sweep_acceptance(self, n):
        summary = pigeonhole_sweep(n, 10_000, seed=n)
        assert summary.failures == []


class TestMonotonicity:
    def test_trivial_factor_is_neutral(self):
        v = Support.parse("[4,1];[2,2,1]")
        report = monotonicity_check(v, row(5))
        assert report.outcome == "pass"
        assert not report.strict
        assert report.product.measure == report.v.measure

    def test_standard_square_grows(self):
        report = monotonicity_check(Support.of([P("[4,1]")]), P("[4,1]"))
        assert report.outcome == "pass"
        assert report.strict
        assert report.product.measure == "13/20"

    @pytest.mark.parametrize("n", range(2, 8))
    def test_exhaustive_sweep(self, n):
        summary = monotonicity_sweep(n)
        assert summary.passed
        assert summary.checked == len(partitions_of(n)) ** 2

    @pytest.mark.slow
    @settings(max_examples=1000, deadline=None)
    @given(st.data())
    def test_random_supports_large_n(self, data):
        n = data.draw(st.sampled_from([8, 9, 10]))
        parts = partitions_of(n)
        members = data.draw(st.sets(st.sampled_from(parts), min_size=1))
        lam = data.draw(st.sampled_from(parts))
        assert monotonicity_check(Support.of(members), lam).outcome == "pass"

    def test_size_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            monotonicity_check(full(4), row(5))


def test_saxl_measure_trend():
    rows = saxl_measure_trend(4)
    assert [(r.r, r.n) for r in rows] == [(2, 3), (3, 6), (4, 10)]
    assert rows[0].measure == "1/1" and rows[1].measure == "1/1"
    assert 0 < rows[2].measure_float <= 1
    with pytest.raises(InvalidArgumentError):
        saxl_measure_trend(1)


class TestAffineDemo:
    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_uniform_measure_fails(self, p):
        demo = affine_counterexample_demo(p)
        assert demo.group_order == p * (p - 1)
        assert sum(d * d for d in demo.dimensions) == demo.group_order
        assert Fraction(demo.uniform_sum) == Fraction(2 * (p - 1), p)
        assert Fraction(demo.plancherel_sum) == Fraction(2, p)
        assert not demo.product_covers
        assert demo.uniform_criterion_fails

    def test_three(self):
        demo = affine_counterexample_demo(3)
        assert demo.dimensions == [1, 1, 2]
        assert demo.product == [0, 1]
        assert demo.uniform_sum == "4/3"

    @pytest.mark.parametrize("p", [2, 4, 9])
    def test_rejects_non_odd_primes(self, p):
        with pytest.raises(InvalidArgumentError):
            affine_counterexample_demo(p)
