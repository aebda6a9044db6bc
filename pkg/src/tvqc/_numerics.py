"""One-dimensional search routines shared by the capacity and outage modules."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import NoSolutionError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_max(f: Callable[[np.ndarray], np.ndarray], a, b, tol: float = 1e-10):
    """Maximize a unimodal function on [a, b], elementwise over arrays.

    ``f`` must accept and return arrays shaped like ``a``. All lanes run the
    same number of iterations, so a scalar call and a batched call return
    bit-identical results for the same lane.

    Returns ``(x_best, f_best)``.
    """
    a = np.array(a, dtype=float, copy=True)
    b = np.array(b, dtype=float, copy=True)
    a, b = np.broadcast_arrays(a, b)
    a = a.copy()
    b = b.copy()
    h = float(np.max(b - a)) if a.size else 0.0
    n = max(int(math.ceil(math.log(tol / h) / math.log(INV_PHI))), 1) if h > tol else 1

    c = a + INV_PHI_SQ * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(n):
        left = fc > fd
        # keep [a, d] where f(c) > f(d), otherwise keep [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, a + INV_PHI_SQ * (b - a), d)
        new_d = np.where(left, c, a + INV_PHI * (b - a))
        probe = np.where(left, new_c, new_d)
        fp = f(probe)
        fc, fd = np.where(left, fp, fd), np.where(left, fc, fp)
        c, d = new_c, new_d

    mid = 0.5 * (a + b)
    fm = f(mid)
    x_best, f_best = mid, fm
    for x, fx in ((c, fc), (d, fd)):
        better = fx > f_best
        x_best = np.where(better, x, x_best)
        f_best = np.where(better, fx, f_best)
    return x_best, f_best


def bisect_decreasing(f: Callable[[float], float], level: float, lo: float, hi: float,
                      xtol: float = 0.0, max_iter: int = 200, mono_tol: float = 1e-12) -> float:
    """Solve ``f(x) = level`` for a nonincreasing ``f`` on ``[lo, hi]``.

    Iterates until the bracket is narrower than ``xtol`` or can no longer be
    split in floating point. Monotonicity is checked at every midpoint, up to
    ``mono_tol`` of evaluation noise.
    """
    f_lo = f(lo) - level
    f_hi = f(hi) - level
    if f_lo < 0 or f_hi > 0:
        raise NoSolutionError(
            f"level {level!r} not bracketed on [{lo!r}, {hi!r}] "
            f"(f(lo)={f_lo + level!r}, f(hi)={f_hi + level!r})"
        )
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = f(mid) - level
        if f_mid > f_lo + mono_tol or f_mid < f_hi - mono_tol:
            raise NoSolutionError(f"function is not monotone near x={mid!r}")
        if f_mid == 0:
            return mid
        if f_mid > 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)
