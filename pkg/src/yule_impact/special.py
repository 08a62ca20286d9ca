"""Special functions: regularized incomplete beta, the F distribution and the
Yule (Simon) limiting size distribution.

Everything here is scalar ``math`` code; accuracy targets are ~1e-12 absolute
for moderate shape parameters (a, b up to a few hundred).
"""
from __future__ import annotations

import math

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for I_x(a, b), modified Lentz evaluation."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def log_beta(a: float, b: float) -> float:
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and 0 <= x <= 1.

    Raises ValueError outside that domain.
    """
    if not (a > 0 and b > 0 and math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"shape parameters must be positive and finite, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = a * math.log(x) + b * math.log1p(-x) - log_beta(a, b)
    front = math.exp(log_front)
    # the continued fraction converges fast only below the mean; reflect otherwise
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def f_sf(f: float, v1: float, v2: float) -> float:
    """Upper tail P(F > f) of the F(v1, v2) distribution."""
    if v1 <= 0 or v2 <= 0:
        raise ValueError(f"degrees of freedom must be positive, got v1={v1}, v2={v2}")
    if math.isnan(f) or f == -math.inf:
        raise ValueError(f"F statistic must be a number >= 0, got {f}")
    if f == math.inf:
        return 0.0
    if f < 0:
        raise ValueError(f"F statistic must be >= 0, got {f}")
    if f == 0:
        return 1.0
    return regularized_incomplete_beta(v2 / 2.0, v1 / 2.0, v2 / (v2 + v1 * f))


def f_cdf(f: float, v1: float, v2: float) -> float:
    return 1.0 - f_sf(f, v1, v2)


def f_critical(level: float, v1: float, v2: float, tol: float = 1e-12) -> float:
    """Quantile F(level; v1, v2), i.e. the f with P(F <= f) = level.

    Bisection on the survival function; the bracket is grown until it
    contains the root.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    target = 1.0 - level
    lo, hi = 0.0, 1.0
    while f_sf(hi, v1, v2) > target:
        lo, hi = hi, hi * 2.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if f_sf(mid, v1, v2) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def yule_limit_pmf(rho: float, i: int) -> float:
    """Yule distribution f(i) = rho * B(i, rho + 1), i = 1, 2, ...

    For rho = 1 this is 1 / (i (i + 1)).
    """
    if not (rho > 0 and math.isfinite(rho)):
        raise ValueError(f"rho must be positive and finite, got {rho}")
    if int(i) != i or i < 1:
        raise ValueError(f"size must be a positive integer, got {i}")
    i = int(i)
    if i <= 64:
        # f(1) = rho/(rho+1), f(k+1) = f(k) * k / (k + 1 + rho)
        p = rho / (rho + 1.0)
        for k in range(1, i):
            p *= k / (k + 1.0 + rho)
        return p
    return rho * math.exp(log_beta(i, rho + 1.0))


def yule_limit_sf(rho: float, n: int) -> float:
    """P(size > n) under the Yule distribution, equal to n * B(n, rho + 1)."""
    if not (rho > 0 and math.isfinite(rho)):
        raise ValueError(f"rho must be positive and finite, got {rho}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return 1.0
    return n * math.exp(log_beta(n, rho + 1.0))
