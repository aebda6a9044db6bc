import math

import pytest

from tvqc.errors import DegenerateDistributionError, DomainError
from tvqc.montecarlo import (CHUNK_SIZE, McConfig, agrees, blocks_for_wer, confidence_interval,
                             empirical_outage, merge_estimates)
from tvqc.outage import OutageQuery, outage_probability

R = 1 / 9


def cfg(kind="ADCTA", cv=0.25, gamma=0.3, n=200_000, seed=11, mu=100.0):
    return McConfig(seed, n, mu, cv, kind, R, gamma)


def test_far_below_noise_limit_never_in_outage():
    est = empirical_outage(cfg("AD", cv=0.1, gamma=0.05, n=10 ** 5))
    assert est.p_hat == 0.0 and est.n_events == 0
    assert est.std_err == 0.0


@pytest.mark.parametrize("kind", ["AD", "ADPTA", "ADCTA"])
def test_event_equivalence_and_agreement(kind):
    c = cfg(kind, n=300_000, seed=2)
    est = empirical_outage(c)
    assert est.n_events == est.n_threshold_events
    assert agrees(est, outage_probability(OutageQuery(kind, R, c.cv, c.gamma)))


@pytest.mark.slow
def test_closed_form_at_one_million_samples():
    c = McConfig(42, 10 ** 6, 100.0, 0.25, "AD", R, 0.3)
    est = empirical_outage(c, workers=4)
    ref = outage_probability(OutageQuery("AD", R, 0.25, 0.3))
    assert abs(est.p_hat - ref) <= 3 * est.std_err
    assert est.n_events == est.n_threshold_events


def test_deterministic_across_runs_and_workers():
    c = cfg("ADPTA", n=5 * CHUNK_SIZE + 123)
    a = empirical_outage(c, workers=1)
    b = empirical_outage(c, workers=1)
    d = empirical_outage(c, workers=8)
    assert a == b == d
    assert a.n_samples == 5 * CHUNK_SIZE + 123


def test_seed_changes_result():
    assert empirical_outage(cfg(seed=1)) != empirical_outage(cfg(seed=2))


def test_sample_splitting_consistency():
    full = empirical_outage(cfg("ADCTA", n=10 ** 6, seed=100))
    halves = merge_estimates(empirical_outage(cfg("ADCTA", n=500_000, seed=101)),
                             empirical_outage(cfg("ADCTA", n=500_000, seed=102)))
    assert halves.n_samples == 10 ** 6
    assert abs(halves.p_hat - full.p_hat) <= 4 * full.std_err


def test_mu_does_not_change_outage_frequency_materially():
    ests = [empirical_outage(cfg("ADCTA", mu=mu, seed=9)) for mu in (1.0, 100.0, 1e4)]
    # same seed and standardized draws: only floating point separates the runs
    assert max(e.n_events for e in ests) - min(e.n_events for e in ests) <= 2


def test_degenerate_cv_rejected():
    with pytest.raises(DegenerateDistributionError):
        empirical_outage(cfg(cv=0.0))


def test_config_validation():
    with pytest.raises(DomainError):
        cfg(n=0)
    with pytest.raises(DomainError):
        McConfig(-1, 10, 100.0, 0.1, "AD", R, 0.3)
    with pytest.raises(DomainError):
        McConfig(1, 10, 100.0, 0.1, "AD", 1.2, 0.3)


def test_standard_error_scaling():
    est = empirical_outage(McConfig(5, 100, 100.0, 0.25, "AD", R, 0.432))
    assert est.std_err == pytest.approx(math.sqrt(est.p_hat * (1 - est.p_hat) / 100))
    assert 0.03 < est.std_err <= 0.05


def test_blocks_for_wer():
    assert blocks_for_wer(1e-2) == 10_000
    assert blocks_for_wer(1.0) == 100
    assert blocks_for_wer(3e-4) == 333_334
    assert blocks_for_wer(0.3) == 334
    for bad in (0.0, -1e-3, 1.5):
        with pytest.raises(DomainError):
            blocks_for_wer(bad)


def test_confidence_interval():
    assert confidence_interval(0.01) == pytest.approx((0.008, 0.0125))
    assert confidence_interval(0.0) == (0.0, 0.0)
    assert confidence_interval(0.5) == (0.4, 0.625)
    with pytest.raises(DomainError):
        confidence_interval(1.2)
