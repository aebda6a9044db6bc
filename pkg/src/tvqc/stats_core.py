"""Special functions and the truncated-Gaussian model of the relaxation time T1.

Everything accepts scalars or numpy arrays unless noted otherwise; scalar
inputs give Python floats back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DegenerateDistributionError, DomainError

SQRT2 = math.sqrt(2.0)
SQRT2PI = math.sqrt(2.0 * math.pi)

# Fixed generator algorithm so seeded runs reproduce across platforms.
BIT_GENERATOR = "PCG64"


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def q_function(x):
    """Gaussian upper-tail probability Q(x) = P(N(0, 1) > x).

    Evaluated as erfc(x / sqrt 2) / 2, which keeps full relative accuracy
    deep into the upper tail and underflows cleanly past x ~ 38.
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("q_function requires finite input")
    return _out(0.5 * special.erfc(x / SQRT2))


def _xlog2x(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)


def _h2(x):
    # no validation: used in inner optimization loops
    return -_xlog2x(x) - _xlog2x(1.0 - np.asarray(x, dtype=float))


def binary_entropy(x):
    """H2(x) in bits, with 0 log 0 taken as 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError(f"binary_entropy requires 0 <= x <= 1, got {x!r}")
    return _out(_h2(arr))


def discrete_entropy(p, atol: float = 1e-12) -> float:
    """Shannon entropy in bits of a probability vector."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("discrete_entropy requires a non-empty 1-d vector")
    if np.any(~np.isfinite(p)) or np.any(p < 0.0):
        raise DomainError(f"negative or non-finite probability in {p.tolist()!r}")
    if abs(math.fsum(p.tolist()) - 1.0) > atol:
        raise DomainError(f"probabilities sum to {math.fsum(p.tolist())!r}, not 1")
    return float(-np.sum(_xlog2x(p)))


@dataclass(frozen=True)
class TruncatedGaussian:
    """Normal(mu, sigma^2) restricted to t >= 0, in microseconds.

    ``sigma == 0`` is allowed and means a point mass at ``mu`` (the static
    channel); density-based operations reject it.
    """

    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu > 0.0):
            raise DomainError(f"mu must be positive, got {self.mu!r}")
        if not (math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise DomainError(f"sigma must be non-negative, got {self.sigma!r}")

    @classmethod
    def from_cv(cls, mu: float, cv: float) -> "TruncatedGaussian":
        return cls(mu, cv * mu)

    @property
    def cv(self) -> float:
        return self.sigma / self.mu

    @property
    def degenerate(self) -> bool:
        return self.sigma == 0.0


def _require_spread(d: TruncatedGaussian) -> None:
    if d.degenerate:
        raise DegenerateDistributionError(
            "sigma = 0 is a point mass; the static case must be handled by the caller"
        )


def truncated_pdf(d: TruncatedGaussian, t):
    """Density of T1, renormalized by the mass 1 - Q(mu/sigma) kept by truncation."""
    _require_spread(d)
    t = np.asarray(t, dtype=float)
    kept = q_function(-d.mu / d.sigma)  # = 1 - Q(mu/sigma) without cancellation
    z = (t - d.mu) / d.sigma
    dens = np.exp(-0.5 * z * z) / (d.sigma * SQRT2PI) / kept
    return _out(np.where(t >= 0.0, dens, 0.0))


def truncated_cdf(d: TruncatedGaussian, t):
    """P(T1 < t) = [1 - Q((t - mu)/sigma) - Q(mu/sigma)] / [1 - Q(mu/sigma)]."""
    _require_spread(d)
    t = np.asarray(t, dtype=float)
    a = d.mu / d.sigma
    z = (t - d.mu) / d.sigma
    # 1 - Q(z) rewritten as Q(-z) so that neither term loses precision
    num = q_function(-z) - q_function(a)
    cdf = num / q_function(-a)
    return _out(np.where(t > 0.0, np.clip(cdf, 0.0, 1.0), 0.0))


def truncated_mean(d: TruncatedGaussian) -> float:
    """Analytic mean of the truncated distribution."""
    if d.degenerate:
        return d.mu
    a = d.mu / d.sigma
    phi = math.exp(-0.5 * a * a) / SQRT2PI
    return d.mu + d.sigma * phi / q_function(-a)


def truncated_variance(d: TruncatedGaussian) -> float:
    """Analytic variance of the truncated distribution."""
    if d.degenerate:
        return 0.0
    a = d.mu / d.sigma
    alpha = -a
    phi = math.exp(-0.5 * alpha * alpha) / SQRT2PI
    lam = phi / q_function(alpha)
    return d.sigma ** 2 * (1.0 + alpha * lam - lam ** 2)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for ``seed``, optionally on the substream ``stream``.

    Substreams come from numpy's SeedSequence spawn keys, so
    ``make_rng(s, k)`` is independent of ``make_rng(s, j)`` for ``k != j``
    and does not depend on how many other substreams exist.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in stream))
    return np.random.Generator(np.random.PCG64(ss))


def sample_t1(d: TruncatedGaussian, rng: np.random.Generator, size=None):
    """Draw T1 realizations; negative (or zero) normal draws are redrawn."""
    if d.degenerate:
        if size is None:
            return float(d.mu)
        return np.full(size, d.mu, dtype=float)
    if size is None:
        while True:
            t = d.mu + d.sigma * rng.standard_normal()
            if t > 0.0:
                return float(t)
    out = d.mu + d.sigma * rng.standard_normal(size)
    bad = out <= 0.0
    while np.any(bad):
        k = int(np.count_nonzero(bad))
        out[bad] = d.mu + d.sigma * rng.standard_normal(k)
        bad = out <= 0.0
    return out
