"""Monte Carlo estimate of outage probabilities from sampled relaxation times.

Samples are drawn in fixed-size chunks; chunk ``k`` uses the PCG64 substream
``(seed, k)``. Results therefore depend only on the configuration, never on
how many workers process the chunks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .capacity import capacity_values
from .channel_models import ChannelKind, damping_from_t1, t_algo_for_gamma
from .errors import DegenerateDistributionError, DomainError
from .outage import critical_t1_normalized
from .stats_core import TruncatedGaussian, make_rng, sample_t1

CHUNK_SIZE = 1 << 16


@dataclass(frozen=True)
class McConfig:
    seed: int
    n_samples: int
    mu_t1: float
    cv: float
    kind: ChannelKind
    rate: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ChannelKind.parse(self.kind))
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if int(self.n_samples) < 1:
            raise DomainError(f"n_samples must be >= 1, got {self.n_samples!r}")
        if not self.mu_t1 > 0.0:
            raise DomainError(f"mu_t1 must be positive, got {self.mu_t1!r}")
        if not self.cv >= 0.0:
            raise DomainError(f"cv must be non-negative, got {self.cv!r}")
        if not 0.0 < self.rate < 1.0:
            raise DomainError(f"rate must lie in (0, 1), got {self.rate!r}")
        if not 0.0 <= self.gamma < 1.0:
            raise DomainError(f"gamma must lie in [0, 1), got {self.gamma!r}")


@dataclass(frozen=True)
class McEstimate:
    """Outage frequency over ``n_samples`` realizations.

    ``n_events`` counts realizations whose capacity falls below the rate;
    ``n_threshold_events`` counts those with T1 below the critical time.
    The two agree when the monotonicity argument behind the closed form holds.
    """

    p_hat: float
    n_samples: int
    std_err: float
    n_events: int
    n_threshold_events: int


def _chunk_bounds(n: int):
    return [(k, min(CHUNK_SIZE, n - k * CHUNK_SIZE)) for k in range(-(-n // CHUNK_SIZE))]


def _run_chunk(cfg: McConfig, dist: TruncatedGaussian, t_algo: float, t1_star: float,
               chunk: int, size: int) -> tuple[int, int]:
    rng = make_rng(cfg.seed, chunk)
    t1 = sample_t1(dist, rng, size=size)
    gamma_w = damping_from_t1(t_algo, t1)
    cap = capacity_values(cfg.kind, gamma_w)
    return int(np.count_nonzero(cap < cfg.rate)), int(np.count_nonzero(t1 < t1_star))


def empirical_outage(cfg: McConfig, workers: int = 1) -> McEstimate:
    """Estimate P(capacity(gamma(T1)) < rate) by direct sampling of T1."""
    if cfg.cv == 0.0:
        raise DegenerateDistributionError("cv = 0 is the static channel; use the closed form")
    dist = TruncatedGaussian.from_cv(cfg.mu_t1, cfg.cv)
    t_algo = t_algo_for_gamma(cfg.mu_t1, cfg.gamma)
    t1_star = critical_t1_normalized(cfg.kind, cfg.rate, cfg.mu_t1, cfg.gamma)
    chunks = _chunk_bounds(int(cfg.n_samples))

    def job(item):
        return _run_chunk(cfg, dist, t_algo, t1_star, *item)

    if workers <= 1:
        counts = [job(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(job, chunks))
    n = int(cfg.n_samples)
    events = sum(c[0] for c in counts)
    threshold = sum(c[1] for c in counts)
    p_hat = events / n
    return McEstimate(p_hat, n, math.sqrt(p_hat * (1.0 - p_hat) / n), events, threshold)


def merge_estimates(*estimates: McEstimate) -> McEstimate:
    """Pool independent runs into one estimate."""
    n = sum(e.n_samples for e in estimates)
    events = sum(e.n_events for e in estimates)
    threshold = sum(e.n_threshold_events for e in estimates)
    p_hat = events / n
    return McEstimate(p_hat, n, math.sqrt(p_hat * (1.0 - p_hat) / n), events, threshold)


def reference_sigma(p: float, n: int) -> float:
    """Binomial standard deviation of a frequency over ``n`` trials with success ``p``."""
    return math.sqrt(p * (1.0 - p) / n)


def agrees(est: McEstimate, p_ref: float, n_sigma: float = 3.0) -> bool:
    """Whether ``est`` is within ``n_sigma`` binomial deviations of ``p_ref``.

    The deviation is taken under the reference probability, so an estimate
    of exactly zero against a vanishing reference is handled without a
    degenerate zero-width interval.
    """
    return abs(est.p_hat - p_ref) <= n_sigma * reference_sigma(p_ref, est.n_samples)


def blocks_for_wer(wer: float) -> int:
    """Rule-of-thumb number of blocks, ceil(100 / WER), to estimate a WER."""
    if not 0.0 < wer <= 1.0:
        raise DomainError(f"wer must lie in (0, 1], got {wer!r}")
    q = 100.0 / wer
    nearest = round(q)
    # absorb the representation error of decimal inputs such as 0.01
    if abs(q - nearest) <= 1e-9 * q:
        return int(nearest)
    return math.ceil(q)


def confidence_interval(p_hat: float) -> tuple[float, float]:
    """(0.8 p_hat, 1.25 p_hat): the 95% interval at the rule-of-thumb sample size."""
    if not 0.0 <= p_hat <= 1.0:
        raise DomainError(f"p_hat must lie in [0, 1], got {p_hat!r}")
    return 0.8 * p_hat, 1.25 * p_hat
