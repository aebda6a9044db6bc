"""Noise limits, critical relaxation times and closed-form outage probabilities.

For the AD channel the outage event is "quantum capacity below the code
rate"; for the twirled channels the hashing bound stands in for the unknown
capacity, giving an upper bound on the true outage probability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from ._numerics import bisect_decreasing
from .capacity import capacity_of
from .channel_models import ChannelKind, cta_pmf, depolarizing_probability
from .errors import DomainError, NoSolutionError, NotBracketedError
from .stats_core import q_function

GAMMA_MAX = -math.expm1(-1.0)  # 1 - 1/e, the algorithm time equals mu_t1
BISECT_XTOL = 1e-9


class XAxis(str, Enum):
    GAMMA = "gamma"
    DEPOLARIZING_P = "depolarizing_p"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OutageQuery:
    kind: ChannelKind
    rate: float
    cv: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ChannelKind.parse(self.kind))
        if not 0.0 < self.rate < 1.0:
            raise DomainError(f"rate must lie in (0, 1), got {self.rate!r}")
        if not (math.isfinite(self.cv) and self.cv >= 0.0):
            raise DomainError(f"cv must be non-negative, got {self.cv!r}")
        if not 0.0 <= self.gamma <= GAMMA_MAX:
            raise DomainError(
                f"gamma must lie in [0, 1 - 1/e] = [0, {GAMMA_MAX:.6f}], got {self.gamma!r}"
            )


@dataclass(frozen=True)
class NoiseLimit:
    kind: ChannelKind
    rate: float
    gamma_star: float


@dataclass(frozen=True)
class CurveTable:
    """Ordered samples of a curve; ``kind``/``rate``/``cv`` are unset for external data."""

    points: tuple[tuple[float, float], ...]
    x_axis: XAxis = XAxis.GAMMA
    kind: Optional[ChannelKind] = None
    rate: Optional[float] = None
    cv: Optional[float] = None

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "x_axis", XAxis(self.x_axis))
        xs = [x for x, _ in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError("curve abscissae must be strictly increasing")
        if any(not 0.0 <= y <= 1.0 for _, y in pts):
            raise DomainError("curve ordinates must lie in [0, 1]")

    @property
    def x(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def y(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


@lru_cache(maxsize=256)
def _gamma_star(kind: ChannelKind, rate: float) -> float:
    if not 0.0 < rate < 1.0:
        raise NoSolutionError(f"rate {rate!r} is not achievable: capacities lie in [0, 1)")
    # bisect to the last representable bit; the 1e-9 contract is then met with room
    return bisect_decreasing(lambda g: capacity_of(kind, g), rate, 0.0, 1.0, xtol=0.0)


def noise_limit(kind: ChannelKind, rate: float) -> NoiseLimit:
    """Damping parameter at which the capacity (or hashing bound) equals ``rate``."""
    kind = ChannelKind.parse(kind)
    return NoiseLimit(kind, float(rate), _gamma_star(kind, float(rate)))


def critical_t1_from_talgo(kind: ChannelKind, rate: float, t_algo: float) -> float:
    """Relaxation time below which a run of length ``t_algo`` is in outage."""
    if not t_algo > 0.0:
        raise DomainError(f"t_algo must be positive, got {t_algo!r}")
    gs = noise_limit(kind, rate).gamma_star
    return -t_algo / math.log1p(-gs)


def critical_t1_normalized(kind: ChannelKind, rate: float, mu_t1: float, gamma: float) -> float:
    """Critical relaxation time when t_algo is set by the static damping ``gamma``."""
    if not mu_t1 > 0.0:
        raise DomainError(f"mu_t1 must be positive, got {mu_t1!r}")
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma!r}")
    gs = noise_limit(kind, rate).gamma_star
    return mu_t1 * math.log1p(-gamma) / math.log1p(-gs)


def outage_probability(q: OutageQuery) -> float:
    """Closed-form outage probability (hashing outage for the twirled channels).

    With r = ln(1 - gamma) / ln(1 - gamma*),

        p_out = 1 - Q((r - 1) / cv) / (1 - Q(1 / cv)),

    independent of the mean relaxation time. ``cv == 0`` is the static
    channel: a step from 0 to 1 at gamma*.
    """
    gs = noise_limit(q.kind, q.rate).gamma_star
    if q.cv == 0.0:
        return 1.0 if q.gamma >= gs else 0.0
    r = math.log1p(-q.gamma) / math.log1p(-gs)
    p = 1.0 - q_function((r - 1.0) / q.cv) / (1.0 - q_function(1.0 / q.cv))
    return min(max(p, 0.0), 1.0)


def gamma_for_depolarizing_p(p: float) -> float:
    """Damping parameter whose Clifford twirl has depolarizing probability ``p``."""
    if not 0.0 <= p <= 0.75:
        raise DomainError(f"depolarizing probability must lie in [0, 0.75], got {p!r}")
    # depolarizing_probability(cta_pmf(.)) is increasing; bisect its negation
    return bisect_decreasing(
        lambda g: -depolarizing_probability(cta_pmf(g)), -p, 0.0, 1.0, xtol=BISECT_XTOL * 1e-3
    )


def outage_curve(kind: ChannelKind, rate: float, cv: float, x_axis: XAxis,
                 grid: Sequence[float]) -> CurveTable:
    """Evaluate the outage probability along ``grid``.

    On the ``depolarizing_p`` axis each abscissa is first mapped to the
    damping parameter of the Clifford-twirled channel.
    """
    kind = ChannelKind.parse(kind)
    x_axis = XAxis(x_axis)
    xs = [float(x) for x in grid]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainError("grid must be strictly increasing")
    points = []
    for x in xs:
        gamma = gamma_for_depolarizing_p(x) if x_axis is XAxis.DEPOLARIZING_P else x
        points.append((x, outage_probability(OutageQuery(kind, rate, cv, gamma))))
    return CurveTable(tuple(points), x_axis, kind, float(rate), float(cv))


def crossing_abscissa(curve: CurveTable, level: float) -> float:
    """Abscissa where the piecewise log-log interpolant of ``curve`` meets ``level``.

    The first bracketing segment is used. Segments touching y = 0 fall back
    to interpolation linear in y against log x.
    """
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    x, y = curve.x, curve.y
    if np.any(x <= 0.0):
        raise DomainError("log-scale interpolation needs positive abscissae")
    for i in range(len(x) - 1):
        y0, y1 = y[i], y[i + 1]
        if y0 == level:
            return float(x[i])
        if min(y0, y1) < level <= max(y0, y1) and y0 != y1:
            lx0, lx1 = math.log10(x[i]), math.log10(x[i + 1])
            if y0 > 0.0 and y1 > 0.0:
                t = (math.log10(level) - math.log10(y0)) / (math.log10(y1) - math.log10(y0))
            else:
                t = (level - y0) / (y1 - y0)
            return float(10.0 ** (lx0 + t * (lx1 - lx0)))
    if len(y) and y[-1] == level:
        return float(x[-1])
    lo, hi = (float(y.min()), float(y.max())) if len(y) else (math.nan, math.nan)
    raise NotBracketedError(f"level {level!r} outside curve range [{lo!r}, {hi!r}]")


def delta_out(code_curve: CurveTable, outage_curve: CurveTable, wer_level: float) -> float:
    """Distance in dB between a code's WER curve and an outage curve at ``wer_level``."""
    if code_curve.x_axis is not outage_curve.x_axis:
        raise DomainError(
            f"curves use different abscissae: {code_curve.x_axis} vs {outage_curve.x_axis}"
        )
    errors = []
    xs = {}
    for name, curve in (("code", code_curve), ("outage", outage_curve)):
        try:
            xs[name] = crossing_abscissa(curve, wer_level)
        except NotBracketedError as exc:
            errors.append(f"{name} curve: {exc}")
    if errors:
        raise NotBracketedError("; ".join(errors))
    return 10.0 * math.log10(xs["outage"] / xs["code"])
