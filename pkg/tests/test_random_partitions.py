import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from sncover import __version__
from sncover.characters import partitions_of
from sncover.config import use_config
from sncover.diagram import Partition, dimension, row
from sncover.errors import InvalidArgumentError, ResourceLimitError
from sncover.random_partitions import (
    ALPHA_CLOSED_FORM,
    UNIFORM_DISTROWS_CONSTANT,
    SampleStats,
    alpha_constant,
    coupled_cover_experiment,
    distrows_experiment,
    make_rng,
    partition_counts,
    plancherel_sample,
    randbelow,
    sample,
    shape_distance_experiment,
    uniform_sample,
    v_density,
)


def test_partition_counts():
    p = partition_counts(100)
    assert p[:8] == (1, 1, 2, 3, 5, 7, 11, 15)
    assert p[100] == 190569292
    assert all(p[n] == len(partitions_of(n)) for n in range(15))


@given(st.integers(1, 2**200))
def test_randbelow_in_range(m):
    assert 0 <= randbelow(make_rng(7), m) < m


def test_randbelow_rejects_empty_range():
    with pytest.raises(InvalidArgumentError):
        randbelow(make_rng(0), 0)


@pytest.mark.parametrize("measure", ["plancherel", "uniform"])
def test_samples_are_partitions_and_reproducible(measure):
    for trial in range(20):
        lam = sample(measure, 30, seed=11, trial=trial)
        assert isinstance(lam, Partition)
        assert lam.size == 30
        assert sample(measure, 30, seed=11, trial=trial) == lam


def test_trials_are_independent_streams():
    draws = {plancherel_sample(50, seed=3, trial=t) for t in range(20)}
    assert len(draws) > 1


def _empirical(draw, n, trials):
    counts = {}
    for t in range(trials):
        lam = draw(n, seed=5, trial=t)
        counts[lam] = counts.get(lam, 0) + 1
    return counts


def test_uniform_sampler_is_uniform_at_n5():
    trials = 7000
    counts = _empirical(uniform_sample, 5, trials)
    assert set(counts) == set(partitions_of(5))
    for c in counts.values():
        assert abs(c / trials - 1 / 7) < 0.02


def test_plancherel_sampler_matches_dimensions_at_n4():
    trials = 6000
    counts = _empirical(plancherel_sample, 4, trials)
    for lam in partitions_of(4):
        expected = dimension(lam) ** 2 / math.factorial(4)
        assert abs(counts.get(lam, 0) / trials - expected) < 0.025


@pytest.mark.slow
@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("measure", ["plancherel", "uniform"])
def test_sampler_chi_square(measure, n):
    trials = 100_000
    draw = plancherel_sample if measure == "plancherel" else uniform_sample
    counts = _empirical(draw, n, trials)
    parts = partitions_of(n)
    if measure == "plancherel":
        probs = np.array([dimension(p) ** 2 for p in parts], dtype=float) / math.factorial(n)
    else:
        probs = np.full(len(parts), 1 / len(parts))
    observed = np.array([counts.get(p, 0) for p in parts])
    result = stats.chisquare(observed, probs * trials)
    assert result.pvalue > 0.01


def test_uniform_cap(config):
    with use_config(config.model_copy(update={"uniform_cap": 10})):
        with pytest.raises(ResourceLimitError):
            uniform_sample(11, seed=0)
        with pytest.raises(ResourceLimitError):
            distrows_experiment("uniform", 11, 2, 0)


def test_bad_arguments():
    with pytest.raises(InvalidArgumentError):
        sample("plancherel", 0, seed=0)
    with pytest.raises(InvalidArgumentError):
        sample("zipf", 5, seed=0)
    with pytest.raises(InvalidArgumentError):
        distrows_experiment("plancherel", 5, 0, 0)


def test_v_density():
    assert v_density(0.0) == pytest.approx(0.25 + 1 / math.pi**2)
    assert v_density(2.0) == pytest.approx(0.0)
    assert v_density(-2.0) == pytest.approx(0.0)
    with pytest.raises(InvalidArgumentError):
        v_density(2.5)


def test_alpha_quadrature_matches_closed_form():
    assert alpha_constant() == pytest.approx(ALPHA_CLOSED_FORM, abs=1e-6)
    assert ALPHA_CLOSED_FORM == pytest.approx(1.0808, abs=1e-4)


def test_stats_model():
    stats = distrows_experiment("plancherel", 100, 25, seed=1)
    assert stats.trials == 25
    assert stats.algorithm == "philox/rsk-row-insertion/v1"
    assert stats.provenance.config["seed"] == 0
    assert stats.provenance.seed == 1
    assert stats.model_dump()["provenance"]["version"] == __version__
    assert stats.normalized_mean == pytest.approx(stats.mean / 10)
    again = distrows_experiment("plancherel", 100, 25, seed=1)
    assert again.dist_rows == stats.dist_rows


def test_stats_validation():
    with pytest.raises(ValueError):
        SampleStats(measure="uniform", n=5, seed=0, algorithm="x", dist_rows=[1, 2], shape_distances=[0.1])


def test_threads_do_not_change_results(config):
    serial = distrows_experiment("uniform", 200, 8, seed=4)
    with use_config(config.model_copy(update={"threads": 2})):
        parallel = distrows_experiment("uniform", 200, 8, seed=4)
    assert parallel.dist_rows == serial.dist_rows


def test_shape_distances_shrink_with_n():
    small = shape_distance_experiment("plancherel", 100, 10, seed=2)
    large = shape_distance_experiment("plancherel", 2500, 10, seed=2)
    assert large.median_shape_distance < small.median_shape_distance


class TestCoupledCover:
    def test_identical_trivial_never_covers(self):
        result = coupled_cover_experiment(
            "custom", 3, 5, 4, "identical", seed=0, sampler=lambda n, rng: row(n)
        )
        assert result.covered == 0
        assert result.frequency == 0.0
        assert result.algorithm == "custom"

    def test_frequency_in_range(self):
        result = coupled_cover_experiment("plancherel", 3, 6, 20, "independent", seed=9)
        assert 0.0 <= result.frequency <= 1.0
        assert len(result.samples) == 20
        assert all(len(s) == 3 for s in result.samples)

    def test_records_provenance(self):
        result = coupled_cover_experiment("uniform", 2, 5, 3, "independent", seed=4)
        doc = result.model_dump()
        assert doc["provenance"]["seed"] == 4
        assert doc["provenance"]["version"] == __version__
        assert "oracle_cap" in doc["provenance"]["config"]

    def test_bad_coupling(self):
        with pytest.raises(InvalidArgumentError):
            coupled_cover_experiment("plancherel", 2, 5, 1, "entangled", seed=0)


@pytest.mark.slow
def test_plancherel_distinct_rows_constant():
    stats = distrows_experiment("plancherel", 4000, 2000, seed=20)
    assert stats.normalized_mean == pytest.approx(alpha_constant(), rel=0.05)


@pytest.mark.slow
def test_uniform_distinct_rows_constant():
    stats = distrows_experiment("uniform", 4000, 2000, seed=21)
    assert stats.normalized_mean == pytest.approx(UNIFORM_DISTROWS_CONSTANT, rel=0.05)


def test_rng_is_counter_based():
    a = make_rng(1, 5).integers(0, 2**32, size=4)
    b = make_rng(1, 5).integers(0, 2**32, size=4)
    np.testing.assert_array_equal(a, b)
