"""Damping parameter of the amplitude damping channel and its twirled Pauli channels."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, UndefinedAsymmetryError


class ChannelKind(str, Enum):
    AD = "AD"
    ADPTA = "ADPTA"
    ADCTA = "ADCTA"

    @classmethod
    def parse(cls, text: "str | ChannelKind") -> "ChannelKind":
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).strip().upper())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise DomainError(f"unknown channel kind {text!r} (expected one of {names})") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PauliPmf:
    """Probabilities of applying I, X, Y, Z to the qubit."""

    p_i: float
    p_x: float
    p_y: float
    p_z: float

    def __post_init__(self):
        comps = self.as_tuple()
        if any(not (0.0 <= p <= 1.0) for p in comps):
            raise DomainError(f"Pauli probabilities must lie in [0, 1], got {comps!r}")
        if abs(math.fsum(comps) - 1.0) > 1e-12:
            raise DomainError(f"Pauli probabilities sum to {math.fsum(comps)!r}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_i, self.p_x, self.p_y, self.p_z)


def _check_gamma(gamma, name="gamma"):
    g = np.asarray(gamma, dtype=float)
    if np.any(~np.isfinite(g)) or np.any(g < 0.0) or np.any(g > 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {gamma!r}")
    return g


def damping_from_t1(t_algo, t1):
    """gamma = 1 - exp(-t_algo / T1)."""
    t_algo = np.asarray(t_algo, dtype=float)
    t1 = np.asarray(t1, dtype=float)
    if np.any(t1 <= 0.0):
        raise DomainError("relaxation time t1 must be positive")
    if np.any(t_algo < 0.0):
        raise DomainError("algorithm time t_algo must be non-negative")
    g = -np.expm1(-t_algo / t1)
    return float(g) if g.ndim == 0 else g


def t_algo_for_gamma(mu_t1: float, gamma: float) -> float:
    """Algorithm time that takes a static channel with T1 = mu_t1 to damping gamma."""
    if not mu_t1 > 0.0:
        raise DomainError(f"mu_t1 must be positive, got {mu_t1!r}")
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma!r}")
    return -mu_t1 * math.log1p(-gamma)


def _one_minus_sqrt(g):
    # 1 - sqrt(1 - g) without cancellation at small g
    return g / (1.0 + np.sqrt(1.0 - g))


def pta_components(gamma):
    """Vectorized (p_i, p_x, p_y, p_z) of the Pauli-twirled channel; no validation."""
    g = np.asarray(gamma, dtype=float)
    p_x = g / 4.0
    p_z = (_one_minus_sqrt(g) / 2.0) ** 2
    p_i = 1.0 - 2.0 * p_x - p_z
    return p_i, p_x, p_x, p_z


def cta_components(gamma):
    """Vectorized (p_i, p_x, p_y, p_z) of the Clifford-twirled channel; no validation."""
    g = np.asarray(gamma, dtype=float)
    s = np.sqrt(1.0 - g)
    # 1 - ((1 + s)/2)^2 = (1 - s)(3 + s)/4
    p_err = _one_minus_sqrt(g) * (3.0 + s) / 4.0
    p_k = p_err / 3.0
    return 1.0 - p_err, p_k, p_k, p_k


def pta_pmf(gamma: float) -> PauliPmf:
    _check_gamma(gamma)
    return PauliPmf(*(float(c) for c in pta_components(gamma)))


def cta_pmf(gamma: float) -> PauliPmf:
    _check_gamma(gamma)
    return PauliPmf(*(float(c) for c in cta_components(gamma)))


def pmf_for(kind: ChannelKind, gamma: float) -> PauliPmf:
    kind = ChannelKind.parse(kind)
    if kind is ChannelKind.ADPTA:
        return pta_pmf(gamma)
    if kind is ChannelKind.ADCTA:
        return cta_pmf(gamma)
    raise DomainError("the amplitude damping channel itself is not a Pauli channel")


def asymmetry(pmf: PauliPmf) -> float:
    """Ratio p_z / p_x."""
    if pmf.p_x == 0.0:
        raise UndefinedAsymmetryError("asymmetry is undefined when p_x = 0")
    return pmf.p_z / pmf.p_x


def depolarizing_probability(pmf: PauliPmf) -> float:
    """Total probability of a non-identity error, 1 - p_i."""
    return math.fsum(pmf.as_tuple()[1:])
