import random
from collections import Counter
from fractions import Fraction

import pytest

from partstat import closedforms as cf
from partstat.exactnum import bell, stirling2
from partstat.partitions import enumerate_all, enumerate_k
from partstat.sampler import (
    EmpiricalEstimate,
    SamplerConfig,
    branch_probabilities,
    branch_probabilities_k,
    chi_square_uniformity,
    empirical_mean,
    rank_partition,
    rank_partition_k,
    sample_partition,
    sample_partition_k,
    sample_stream,
    unrank_partition,
    unrank_partition_k,
)
from partstat.statistics import parse_statistic


def test_branch_probabilities_are_exact():
    assert branch_probabilities(2) == [Fraction(1, 2), Fraction(1, 2)]
    for n in range(1, 40):
        assert sum(branch_probabilities(n)) == 1
    for n in range(1, 20):
        for k in range(1, n + 1):
            assert sum(branch_probabilities_k(n, k)) == 1


def test_unranking_is_a_bijection():
    for n in range(0, 9):
        parts = [unrank_partition(n, u) for u in range(bell(n))]
        assert sorted(parts) == sorted(enumerate_all(n))
        assert [rank_partition(p) for p in parts] == list(range(bell(n)))


def test_unranking_k_is_a_bijection():
    for n in range(1, 11):
        for k in range(1, n + 1):
            parts = [unrank_partition_k(n, k, u) for u in range(stirling2(n, k))]
            assert set(parts) == set(enumerate_k(n, k))
            assert [rank_partition_k(p) for p in parts] == list(range(stirling2(n, k)))


def test_trivial_cases():
    assert sample_partition(1, 5).blocks == ((1,),)
    assert sample_partition_k(6, 6, 3).k == 6
    assert sample_partition_k(6, 1, 3).blocks == ((1, 2, 3, 4, 5, 6),)
    with pytest.raises(ValueError):
        sample_partition_k(3, 4, 0)


def test_reproducible():
    cfg = SamplerConfig(12, None, 99, 50)
    assert list(sample_stream(cfg)) == list(sample_stream(cfg))
    # the generator bit stream is fixed: pin the first draw
    assert sample_partition(12, random.Random(99)) == next(iter(sample_stream(cfg)))


def test_chi_square_uniform_on_pi4():
    counts = Counter(sample_stream(SamplerConfig(4, None, 12345, 100_000)))
    assert len(counts) == 15
    _, p = chi_square_uniformity([counts[q] for q in enumerate_all(4)])
    assert p > 1e-3


def test_k_sampler_frequencies():
    counts = Counter(sample_stream(SamplerConfig(4, 2, 7, 70_000)))
    sigma = (70_000 * (1 / 7) * (6 / 7)) ** 0.5
    for q in enumerate_k(4, 2):
        assert abs(counts[q] - 10_000) < 4 * sigma


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(5, trials=0)
    with pytest.raises(ValueError):
        SamplerConfig(5, seed=-1)
    with pytest.raises(ValueError):
        SamplerConfig(5, k=6)


def test_single_trial_estimate():
    est = empirical_mean(parse_statistic("blocks"), SamplerConfig(5, None, 1, 1))
    assert isinstance(est, EmpiricalEstimate) and est.trials == 1


@pytest.mark.parametrize(
    "token, n, k, exact",
    [
        ("crol", 30, None, lambda: cf.mean_crol(30)),
        ("blocks", 50, None, lambda: Fraction(bell(51), bell(50)) - 1),
        ("ov", 40, 5, lambda: cf.mean_ov_k(40, 5)),
    ],
)
def test_empirical_means_within_five_sigma(token, n, k, exact):
    est = empirical_mean(parse_statistic(token), SamplerConfig(n, k, 2024, 100_000))
    assert abs(est.mean - float(exact())) < 5 * est.stderr
