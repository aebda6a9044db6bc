import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, stats

from tvqc.errors import DegenerateDistributionError, DomainError
from tvqc.stats_core import (TruncatedGaussian, binary_entropy, discrete_entropy, make_rng,
                             q_function, sample_t1, truncated_cdf, truncated_mean,
                             truncated_pdf, truncated_variance)

# frozen from scipy.integrate.quad of the Gaussian tail (epsrel 1e-13)
Q_1_959964 = 0.024999999096442408
# frozen from quad of truncated_pdf over [0, 80] for mu=100, sigma=25
CDF_100_25_80 = 0.21183043627453849

CVS = [0.01, 0.1, 0.15, 0.2, 0.25, 0.3]


def test_q_function_examples():
    assert q_function(0.0) == 0.5
    assert q_function(40.0) < 1e-300
    assert q_function(1.959964) == pytest.approx(0.025, abs=1e-6)
    assert q_function(1.959964) == pytest.approx(Q_1_959964, rel=1e-12)


def test_q_function_matches_quadrature_on_grid():
    for x in np.linspace(-6, 8, 29):
        ref, _ = integrate.quad(lambda t: math.exp(-t * t / 2) / math.sqrt(2 * math.pi),
                                x, np.inf, epsabs=0, epsrel=1e-13)
        assert q_function(x) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("bad", [math.inf, -math.inf, math.nan])
def test_q_function_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        q_function(bad)


@given(st.floats(-30, 30))
def test_q_function_symmetry(x):
    assert q_function(x) + q_function(-x) == pytest.approx(1.0, abs=1e-12)


def test_q_function_strictly_decreasing():
    # below about -5 the values round to 1 in double precision
    x = np.linspace(-5, 30, 3501)
    q = q_function(x)
    assert np.all(np.diff(q) < 0)
    assert np.all((q > 0) & (q < 1))


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(0.499916, abs=1e-6)
    assert binary_entropy(0.11) == pytest.approx(discrete_entropy([0.11, 0.89]), abs=1e-15)
    for bad in (-0.1, 1.1):
        with pytest.raises(DomainError):
            binary_entropy(bad)


@given(st.floats(0, 1))
def test_binary_entropy_symmetric(x):
    assert binary_entropy(x) == pytest.approx(binary_entropy(1 - x), abs=1e-12)


def test_discrete_entropy():
    assert discrete_entropy([1, 0, 0, 0]) == 0.0
    assert discrete_entropy([0.25] * 4) == 2.0
    p = [0.7, 0.1, 0.1, 0.1]
    direct = -sum(v * math.log2(v) for v in p)
    assert discrete_entropy(p) == pytest.approx(1.35678, abs=1e-4)
    assert discrete_entropy(p) == pytest.approx(direct, abs=1e-14)
    with pytest.raises(DomainError):
        discrete_entropy([0.5, 0.6, -0.1])
    with pytest.raises(DomainError):
        discrete_entropy([0.5, 0.4])


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_discrete_entropy_uniform_is_log2n(n):
    assert discrete_entropy([1 / n] * n) == pytest.approx(math.log2(n), abs=1e-12)


def test_truncated_gaussian_validation():
    with pytest.raises(DomainError):
        TruncatedGaussian(0.0, 1.0)
    with pytest.raises(DomainError):
        TruncatedGaussian(1.0, -1.0)
    d = TruncatedGaussian(80.0, 20.0)
    assert d.cv == 20.0 / 80.0


def test_truncated_pdf_examples():
    d = TruncatedGaussian(100, 10)
    assert truncated_pdf(d, -1) == 0.0
    assert truncated_pdf(d, 100) == pytest.approx(1 / (10 * math.sqrt(2 * math.pi)), abs=1e-7)
    assert truncated_pdf(d, 100) == pytest.approx(0.0398942, abs=1e-7)
    with pytest.raises(DegenerateDistributionError):
        truncated_pdf(TruncatedGaussian(100, 0), 100)


@pytest.mark.parametrize("cv", CVS)
def test_truncated_pdf_normalized(cv):
    d = TruncatedGaussian.from_cv(80.0, cv)
    # mass beyond 20 sigma of the mean is below 1e-80
    lo, hi = max(0.0, d.mu - 20 * d.sigma), d.mu + 20 * d.sigma
    total, _ = integrate.quad(lambda t: truncated_pdf(d, t), lo, hi, points=[d.mu],
                              epsabs=1e-13, epsrel=1e-13, limit=200)
    assert total == pytest.approx(1.0, abs=1e-9)


def test_truncated_cdf_examples():
    d = TruncatedGaussian(100, 25)
    assert truncated_cdf(d, 0.0) == 0.0
    assert truncated_cdf(TruncatedGaussian(100, 1), 100) == pytest.approx(0.5, abs=1e-6)
    assert truncated_cdf(d, 80) == pytest.approx(CDF_100_25_80, abs=1e-9)
    assert truncated_cdf(d, 1e6) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("cv", [0.1, 0.25, 0.3])
def test_truncated_cdf_agrees_with_pdf_quadrature(cv):
    d = TruncatedGaussian.from_cv(100.0, cv)
    for t in np.linspace(1, 200, 12):
        ref, _ = integrate.quad(lambda s: truncated_pdf(d, s), 0, t, epsabs=1e-14, epsrel=1e-13)
        assert truncated_cdf(d, t) == pytest.approx(ref, abs=1e-9)


@given(st.floats(0.01, 0.3), st.lists(st.floats(-50, 400), min_size=2, max_size=20))
def test_truncated_cdf_nondecreasing(cv, ts):
    d = TruncatedGaussian.from_cv(100.0, cv)
    ts = sorted(ts)
    vals = truncated_cdf(d, np.array(ts))
    assert np.all(np.diff(vals) >= 0)
    assert np.all((vals >= 0) & (vals <= 1))


def test_sample_t1_degenerate():
    rng = make_rng(1)
    assert sample_t1(TruncatedGaussian(80, 0), rng) == 80.0
    assert np.all(sample_t1(TruncatedGaussian(80, 0), rng, size=5) == 80.0)


def test_sample_t1_positive_and_deterministic():
    d = TruncatedGaussian(100, 30)
    a = sample_t1(d, make_rng(7), size=10 ** 6)
    b = sample_t1(d, make_rng(7), size=10 ** 6)
    assert np.all(a > 0)
    assert np.array_equal(a, b)
    assert sample_t1(d, make_rng(123)) > 0


def test_sample_t1_mean():
    x = sample_t1(TruncatedGaussian(100, 10), make_rng(2024), size=10 ** 6)
    assert x.mean() == pytest.approx(100.0, abs=0.05)


def test_sample_t1_ks_against_truncated_cdf():
    d = TruncatedGaussian(100, 30)
    x = sample_t1(d, make_rng(99), size=10 ** 6)
    res = stats.kstest(x, lambda t: truncated_cdf(d, t))
    assert res.statistic < 0.002


@pytest.mark.parametrize("cv", [0.1, 0.3, 0.6])
def test_sample_t1_moments_within_three_standard_errors(cv):
    d = TruncatedGaussian.from_cv(50.0, cv)
    n = 400_000
    x = sample_t1(d, make_rng(5, int(cv * 100)), size=n)
    mean, var = truncated_mean(d), truncated_variance(d)
    assert abs(x.mean() - mean) <= 3 * math.sqrt(var / n)
    m4 = np.mean((x - x.mean()) ** 4)
    assert abs(x.var() - var) <= 3 * math.sqrt((m4 - var ** 2) / n)


def test_truncated_moments_match_scipy():
    d = TruncatedGaussian(50.0, 30.0)
    ref = stats.truncnorm(-d.mu / d.sigma, np.inf, loc=d.mu, scale=d.sigma)
    assert truncated_mean(d) == pytest.approx(ref.mean(), rel=1e-12)
    assert truncated_variance(d) == pytest.approx(ref.var(), rel=1e-10)


def test_substreams_are_distinct_and_reproducible():
    a = make_rng(42, 0).standard_normal(4)
    b = make_rng(42, 1).standard_normal(4)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, make_rng(42, 0).standard_normal(4))
