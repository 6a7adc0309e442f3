"""Quadrature and bracketed root finding shared by the model modules."""

from __future__ import annotations

import math
from typing import Callable

from scipy.integrate import quad

from .errors import NoSolutionError

QUAD_RTOL = 1e-10
ROOT_ATOL = 1e-9
ROOT_MAXITER = 200


def integrate(func: Callable[[float], float], lo: float, hi: float,
              rtol: float = QUAD_RTOL) -> float:
    """Adaptive Gauss-Kronrod integral of ``func`` over ``[lo, hi]``."""
    if hi == lo:
        return 0.0
    value, _ = quad(func, lo, hi, epsabs=0.0, epsrel=rtol, limit=200)
    return value


def bisect(func: Callable[[float], float], lo: float, hi: float,
           atol: float = ROOT_ATOL, maxiter: int = ROOT_MAXITER) -> float:
    """Find ``x`` in ``[lo, hi]`` with ``|func(x)| < atol`` by bisection.

    ``func`` must change sign over the bracket (a zero at either end is
    accepted).  The residual, not the bracket width, is the stopping test.
    If the bracket collapses to adjacent floats first, the endpoint with the
    smaller residual is returned.
    """
    f_lo = func(lo)
    if abs(f_lo) < atol:
        return lo
    f_hi = func(hi)
    if abs(f_hi) < atol:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoSolutionError(
            f"root not bracketed: f({lo!r})={f_lo!r}, f({hi!r})={f_hi!r}")

    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        if abs(f_mid) < atol:
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return lo if abs(f_lo) <= abs(f_hi) else hi
