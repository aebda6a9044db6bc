"""Capacities of the static channels and the classical Rayleigh outage reference."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._numerics import golden_section_max
from .channel_models import ChannelKind, PauliPmf, _check_gamma, cta_components, pta_components
from .errors import DomainError
from .stats_core import _h2, _xlog2x, discrete_entropy

XI_TOL = 1e-10


@dataclass(frozen=True)
class CapacityValue:
    """Qubits per channel use; ``argmax_xi`` is only set for the AD channel."""

    value: float
    argmax_xi: Optional[float] = None


def _ad_objective(gamma):
    g = np.asarray(gamma, dtype=float)

    def f(xi):
        return _h2((1.0 - g) * xi) - _h2(g * xi)

    return f


def ad_capacity_values(gamma):
    """Vectorized AD quantum capacity; returns ``(value, argmax_xi)`` arrays.

    The maximization over the input population xi is a golden-section search
    on [0, 1]. Lanes with gamma >= 1/2 are reported as capacity 0 at xi = 0.
    """
    g = np.atleast_1d(np.asarray(gamma, dtype=float))
    value = np.zeros_like(g)
    xi = np.zeros_like(g)
    live = g < 0.5
    if np.any(live):
        gl = g[live]
        x_best, f_best = golden_section_max(
            _ad_objective(gl), np.zeros_like(gl), np.ones_like(gl), tol=XI_TOL
        )
        noiseless = gl == 0.0
        # analytic endpoint: H2 peaks at exactly 1 bit for xi = 1/2
        x_best = np.where(noiseless, 0.5, x_best)
        f_best = np.where(noiseless, 1.0, f_best)
        value[live] = np.clip(f_best, 0.0, 1.0)
        xi[live] = x_best
    return value, xi


def ad_capacity(gamma: float) -> CapacityValue:
    """Quantum capacity of the amplitude damping channel with damping ``gamma``."""
    _check_gamma(gamma)
    value, xi = ad_capacity_values(gamma)
    return CapacityValue(float(value[0]), float(xi[0]))


def hashing_bound(pmf: PauliPmf) -> CapacityValue:
    """1 - H(p). Negative values are returned as is."""
    return CapacityValue(1.0 - discrete_entropy(pmf.as_tuple()))


def _hashing_values(components):
    return 1.0 + sum(_xlog2x(p) for p in components)


def capacity_values(kind: ChannelKind, gamma):
    """Vectorized capacity (AD) or hashing bound (twirls) at damping ``gamma``."""
    kind = ChannelKind.parse(kind)
    g = np.asarray(gamma, dtype=float)
    if kind is ChannelKind.AD:
        return ad_capacity_values(g)[0].reshape(g.shape)
    if kind is ChannelKind.ADPTA:
        return _hashing_values(pta_components(g))
    return _hashing_values(cta_components(g))


def capacity_of(kind: ChannelKind, gamma: float) -> float:
    """Scalar capacity used to define outage for channel ``kind``."""
    _check_gamma(gamma)
    return float(capacity_values(kind, gamma))


def rayleigh_outage(rate: float, snr: float) -> float:
    """Outage probability of a Rayleigh block-fading channel at ``rate`` bits/use."""
    if not snr > 0.0:
        raise DomainError(f"snr must be positive, got {snr!r}")
    if not rate >= 0.0:
        raise DomainError(f"rate must be non-negative, got {rate!r}")
    return -math.expm1(-math.expm1(rate * math.log(2.0)) / snr)
