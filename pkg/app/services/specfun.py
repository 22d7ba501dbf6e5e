#!/usr/bin/env python3
"""
Exponential-integral kernel

Ei(x) is the Cauchy principal value of the integral of e^t/t from -inf to x.
Every closed-form bound that involves Ei goes through this module. The
scaled variants never form e^x explicitly, so they stay finite for the
intensities (up to 1e10 W) used in sweeps.

Evaluation regimes:
    x < 0, |x| <= 2   power series
    x < 0, |x| > 2    continued fraction for E1
    0 < x <= 40       power series
    x > 40            asymptotic series for e^{-x} Ei(x)

Every public function accepts ``quadrature=True`` to switch to a slow
adaptive-quadrature path that serves as an independent reference.
"""

import math

import numpy as np
from scipy import integrate

from app.core.exceptions import DomainError, EiOverflowError

EULER_GAMMA = float(np.euler_gamma)

NEG_SERIES_LIMIT = 2.0
POS_SERIES_LIMIT = 40.0
EI_OVERFLOW_LIMIT = 709.0
DIFF_QUADRATURE_SPAN = 1.0
DIFF_TRUNCATION_SPAN = 60.0

_EPS = np.finfo(float).eps
_FPMIN = np.finfo(float).tiny / _EPS
_MAX_TERMS = 10000
_QUAD_REL_TOL = 1e-13


def _ei_series(x: float) -> float:
    """gamma + ln|x| + sum x^k / (k k!)"""
    total = 0.0
    term = 1.0
    for k in range(1, _MAX_TERMS):
        term *= x / k
        contribution = term / k
        total += contribution
        if abs(contribution) < _EPS * abs(total):
            break
    return EULER_GAMMA + math.log(abs(x)) + total


def _e1_scaled_continued_fraction(x: float) -> float:
    """e^x E1(x) for x > 0 by the modified Lentz algorithm."""
    b = x + 1.0
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"continued fraction for E1({x}) did not converge")


def _ei_scaled_asymptotic(x: float) -> float:
    """e^{-x} Ei(x) for large positive x: (1/x) sum k!/x^k, cut at the smallest term."""
    total = 1.0
    term = 1.0
    for k in range(1, _MAX_TERMS):
        previous = term
        term *= k / x
        if term > previous:
            break
        total += term
        if term < _EPS * total:
            break
    return total / x


def _quad(func, a: float, b: float) -> float:
    value, _ = integrate.quad(func, a, b, epsabs=0.0, epsrel=_QUAD_REL_TOL, limit=500)
    return value


def _ei_quadrature(x: float) -> float:
    if x < -1.0:
        return -_quad(lambda t: math.exp(-t) / t, -x, math.inf)
    # Ei(x) = gamma + ln|x| + int_0^x (e^t - 1)/t dt, smooth at 0
    return EULER_GAMMA + math.log(abs(x)) + _quad(lambda t: math.expm1(t) / t if t else 1.0, 0.0, x)


def _positive_scaled(x: float) -> float:
    """e^{-x} Ei(x) for x > 0."""
    if x > POS_SERIES_LIMIT:
        return _ei_scaled_asymptotic(x)
    return _ei_series(x) * math.exp(-x)


def ei(x: float, quadrature: bool = False) -> float:
    """Exponential integral Ei(x) for real x != 0.

    Raises DomainError at x = 0 and EiOverflowError above ~709.
    """
    x = float(x)
    if x == 0.0 or not math.isfinite(x):
        raise DomainError("Ei is undefined at x = 0", {"x": x})
    if x > EI_OVERFLOW_LIMIT:
        raise EiOverflowError(
            f"Ei({x}) overflows double precision; use a scaled variant", {"x": x}
        )
    if quadrature:
        return _ei_quadrature(x)
    if x < 0:
        if -x <= NEG_SERIES_LIMIT:
            return _ei_series(x)
        return -_e1_scaled_continued_fraction(-x) * math.exp(x)
    if x <= POS_SERIES_LIMIT:
        return _ei_series(x)
    return _ei_scaled_asymptotic(x) * math.exp(x)


def scaled_ei_neg(x: float, quadrature: bool = False) -> float:
    """e^x Ei(-x) for x > 0, always negative and never overflowing.

    Args:
        x: Positive argument, typically 1/(H varsigma^2 xi P).
        quadrature: Use the integral representation -int_0^inf e^{-u}/(x+u) du.
    """
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError("scaled_ei_neg requires a positive finite argument", {"x": x})
    if quadrature:
        if x <= 1.0:
            return math.exp(x) * _ei_quadrature(-x)
        return -_quad(lambda u: math.exp(-u) / (x + u), 0.0, math.inf)
    if x <= NEG_SERIES_LIMIT:
        return math.exp(x) * _ei_series(-x)
    return -_e1_scaled_continued_fraction(x)


def _scaled(x: float) -> float:
    """e^{-x} Ei(x) for any nonzero x."""
    if x < 0:
        return scaled_ei_neg(-x)
    return _positive_scaled(x)


def ei_diff_scaled(a: float, b: float, quadrature: bool = False) -> float:
    """e^{-a} (Ei(b) - Ei(a)) for nonzero a, b of the same sign.

    Computed as int_a^b e^{t-a}/t dt. Close endpoints and the quadrature
    flag use adaptive quadrature of that integral; otherwise the result is
    e^{b-a} s(b) - s(a) with s(x) = e^{-x} Ei(x).
    """
    a = float(a)
    b = float(b)
    if a == 0.0 or b == 0.0 or (a > 0) != (b > 0):
        raise DomainError(
            "ei_diff_scaled requires nonzero arguments of the same sign", {"a": a, "b": b}
        )
    if a == b:
        return 0.0
    if b - a > EI_OVERFLOW_LIMIT:
        raise EiOverflowError("e^(b-a) overflows double precision", {"a": a, "b": b})

    if quadrature or abs(b - a) < DIFF_QUADRATURE_SPAN:
        lo, hi = min(a, b), max(a, b)
        # integrand is negligible more than DIFF_TRUNCATION_SPAN e-folds below its peak at hi
        if hi - lo > DIFF_TRUNCATION_SPAN:
            cut = hi - DIFF_TRUNCATION_SPAN
            if (cut > 0) == (hi > 0) and cut != 0.0:
                lo = cut
        value = _quad(lambda t: math.exp(t - a) / t, lo, hi)
        return value if b > a else -value

    return math.exp(b - a) * _scaled(b) - _scaled(a)
