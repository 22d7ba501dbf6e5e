#!/usr/bin/env python3
"""
Secrecy-capacity bounds under average and peak intensity constraints

The input that maximizes entropy on [0, A] with mean alpha A has density
c e^{cx} / (e^{cA} - 1), uniform when alpha = 0.5. Most quantities are
computed in terms of the dimensionless shape t = cA.
"""

import math
from typing import Optional, Union

import numpy as np
import structlog
from scipy import optimize

from app.core.config import settings
from app.core.exceptions import ConvergenceError, DomainError, UnboundedSolutionError
from app.models.bounds import AsymptoticBounds, PeakConstraint, SecrecyBounds
from app.models.channel import WiretapChannel
from app.services.bounds_avg import LOG_2PI, f_low
from app.services.specfun import ei_diff_scaled

logger = structlog.get_logger(__name__)

SMALL_SHAPE = 1e-2
_MAX_DOUBLINGS = 1100

ArrayLike = Union[float, np.ndarray]


def mean_fraction(t: float) -> float:
    """F(t) = 1/(1 - e^{-t}) - 1/t, the mean of the shape-t density on [0, 1]."""
    if abs(t) < SMALL_SHAPE:
        return 0.5 + t / 12.0 - t ** 3 / 720.0 + t ** 5 / 30240.0
    return 1.0 / (-math.expm1(-t)) - 1.0 / t


def variance_fraction(t: float) -> float:
    """Variance of the shape-t density on [0, 1]: 1/t^2 - 1/(4 sinh^2(t/2))."""
    if abs(t) < SMALL_SHAPE:
        t2 = t * t
        return 1.0 / 12.0 - t2 / 240.0 + t2 * t2 / 6048.0
    half = abs(t) / 2.0
    if half > 350.0:
        return 1.0 / (t * t)
    return 1.0 / (t * t) - 1.0 / (4.0 * math.sinh(half) ** 2)


def log_normalizer(t: float) -> float:
    """ln((e^t - 1)/t), the log-partition of the shape-t density on [0, 1]."""
    if t == 0.0:
        return 0.0
    if t > 0:
        return t + math.log(-math.expm1(-t)) - math.log(t)
    return math.log(-math.expm1(t)) - math.log(-t)


def _check_alpha(alpha: float) -> None:
    if alpha == 1.0:
        raise UnboundedSolutionError(
            "alpha = 1 has no finite maxentropic shape (point mass at A)", {"alpha": alpha}
        )
    if not (0.0 < alpha < 1.0):
        raise DomainError("alpha must lie in (0, 1)", {"alpha": alpha})


def solve_shape(alpha: float) -> float:
    """Solve F(t) = alpha for the dimensionless shape t = cA."""
    _check_alpha(alpha)
    if abs(alpha - 0.5) < settings.ALPHA_SEAM_TOL:
        return 0.0
    # F(-t) = 1 - F(t): solve on the positive side and mirror
    target = alpha if alpha > 0.5 else 1.0 - alpha
    sign = 1.0 if alpha > 0.5 else -1.0

    hi = 1.0
    doublings = 0
    while mean_fraction(hi) < target:
        hi *= 2.0
        doublings += 1
        if doublings > _MAX_DOUBLINGS or not math.isfinite(hi):
            raise ConvergenceError(
                "could not bracket the maxentropic shape", {"alpha": alpha, "bracket_hi": hi}
            )
    if doublings:
        logger.debug("shape_bracket_expanded", alpha=alpha, doublings=doublings, hi=hi)

    t = optimize.brentq(
        lambda s: mean_fraction(s) - target,
        0.0,
        hi,
        xtol=1e-15,
        rtol=4.0 * np.finfo(float).eps,
        maxiter=500,
    )
    residual = abs(mean_fraction(t) - target)
    if residual > settings.SOLVER_TOL:
        raise ConvergenceError(
            "maxentropic shape residual above tolerance",
            {"alpha": alpha, "t": t, "residual": residual},
        )
    return sign * t


def solve_c(alpha: float, A: float) -> float:
    """Shape parameter c (1/W) of the maxentropic density with mean alpha A on [0, A].

    Returns exactly 0 when alpha is within the seam tolerance of 0.5.
    """
    if not (A > 0 and math.isfinite(A)):
        raise DomainError("peak intensity A must be positive", {"A": A})
    return solve_shape(alpha) / A


class MaxentPdf:
    """Truncated-exponential (or uniform) density on [0, A]"""

    def __init__(self, alpha: float, A: float, c: Optional[float] = None):
        if c is None:
            c = solve_c(alpha, A)
        self.alpha = float(alpha)
        self.A = float(A)
        self.c = float(c)

    def __repr__(self) -> str:
        return f"MaxentPdf(alpha={self.alpha!r}, A={self.A!r}, c={self.c!r})"

    @property
    def t(self) -> float:
        """Dimensionless shape cA"""
        return self.c * self.A

    @property
    def is_uniform(self) -> bool:
        return self.c == 0.0

    def eval(self, x: ArrayLike) -> ArrayLike:
        """Density at x (scalar or array), zero outside [0, A]."""
        xs = np.asarray(x, dtype=float)
        inside = (xs >= 0.0) & (xs <= self.A)
        c = self.c
        if c == 0.0:
            values = np.full_like(xs, 1.0 / self.A)
        elif c > 0:
            values = c * np.exp(c * (np.clip(xs, 0.0, self.A) - self.A)) / (-math.expm1(-self.t))
        else:
            values = c * np.exp(c * np.clip(xs, 0.0, self.A)) / math.expm1(self.t)
        values = np.where(inside, values, 0.0)
        return float(values) if values.ndim == 0 else values

    def mean(self) -> float:
        return self.A * mean_fraction(self.t)

    def entropy(self) -> float:
        """Differential entropy in nats"""
        if self.c == 0.0:
            return math.log(self.A)
        return math.log(self.A) + log_normalizer(self.t) - self.t * self.mean() / self.A

    def variance(self) -> float:
        return self.A ** 2 * variance_fraction(self.t)

    def expected_log1p(self, a: float) -> float:
        """E[ln(1 + a X)] in closed form (exponential integrals for c != 0)."""
        if a <= 0:
            raise DomainError("expected_log1p requires a > 0", {"a": a})
        u = a * self.A
        if self.c == 0.0:
            if u < 1e-3:
                # sum (-1)^{k+1} u^k / (k (k+1))
                return u / 2.0 - u ** 2 / 6.0 + u ** 3 / 12.0 - u ** 4 / 20.0
            return math.log1p(u) + math.log1p(u) / u - 1.0
        t = self.t
        p = self.c / a
        q = p + t
        if t > 0:
            return (math.log1p(u) + ei_diff_scaled(q, p)) / (-math.expm1(-t))
        return (math.log1p(u) * math.exp(t) - ei_diff_scaled(p, q)) / math.expm1(t)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Inverse-CDF sampling."""
        u = rng.random(size)
        if self.c == 0.0:
            return u * self.A
        c = self.c
        if c > 0:
            return self.A + np.log(u + (1.0 - u) * math.exp(-self.t)) / c
        return np.log1p(u * math.expm1(self.t)) / c


def maxent_pdf(alpha: float, A: float) -> MaxentPdf:
    return MaxentPdf(alpha, A)


def _require_eavesdropper(ch: WiretapChannel) -> None:
    if ch.H_E <= 0:
        raise DomainError(
            "closed form requires H_E > 0; use the oracle for a blind eavesdropper",
            {"H_E": ch.H_E},
        )


def expected_log_ratio_maxent(ch: WiretapChannel, pdf: MaxentPdf) -> float:
    """E[ln((1 + H_E vs_E X)/(1 + H_B vs_B X))] under the maxentropic input."""
    return pdf.expected_log1p(ch.H_E * ch.noise_E.varsigma2) - pdf.expected_log1p(
        ch.H_B * ch.noise_B.varsigma2
    )


def lower_bound_peak(ch: WiretapChannel, con: PeakConstraint) -> float:
    """Lower bound achieved by the maxentropic input (raw, unclamped)."""
    _require_eavesdropper(ch)
    pdf = MaxentPdf(con.alpha, con.A)
    xiP = con.mean
    var_E = (
        ch.H_E ** 2 * pdf.variance()
        + ch.H_E * xiP * ch.noise_E.dependent_variance
        + ch.noise_E.sigma2
    )
    return (
        f_low(ch.H_B, xiP, ch.noise_B)
        + pdf.entropy()
        + 0.5 * math.log(ch.noise_E.sigma2 / ch.noise_B.sigma2)
        + 0.5 * expected_log_ratio_maxent(ch, pdf)
        - 0.5 * (LOG_2PI + 1.0 + math.log(var_E))
    )


def upper_bound_peak(ch: WiretapChannel, con: PeakConstraint) -> float:
    _require_eavesdropper(ch)
    H_B, H_E, A = ch.H_B, ch.H_E, con.A
    s_B = ch.noise_B.dependent_variance
    s_E = ch.noise_E.dependent_variance
    return 0.5 * (
        math.log(H_E * s_E) + math.log(H_B * A + s_B)
        - math.log(s_B) - math.log(H_E ** 2 * A + H_E ** 2 / H_B * s_B + ch.M)
    )


def lower_bound_peak_si(ch: WiretapChannel, con: PeakConstraint) -> float:
    """Lower bound for signal-independent noise (varsigma ignored)."""
    if ch.H_B <= 0:
        raise DomainError("H_B must be positive", {"H_B": ch.H_B})
    pdf = MaxentPdf(con.alpha, con.A)
    sB2, sE2 = ch.noise_B.sigma2, ch.noise_E.sigma2
    return (
        math.log(ch.H_B)
        + pdf.entropy()
        + 0.5 * math.log(sE2 / sB2)
        - 0.5 * (LOG_2PI + 1.0 + math.log(ch.H_E ** 2 * pdf.variance() + sE2))
    )


def upper_bound_peak_si(ch: WiretapChannel, con: PeakConstraint) -> float:
    if ch.H_B <= 0:
        raise DomainError("H_B must be positive", {"H_B": ch.H_B})
    H_B, H_E = ch.H_B, ch.H_E
    sB2, sE2 = ch.noise_B.sigma2, ch.noise_E.sigma2
    AxiP = con.A * con.mean
    return 0.5 * math.log(
        (H_B ** 2 * AxiP + sB2) * sE2
        / ((H_E ** 2 * AxiP + 2.0 * H_E ** 2 / H_B ** 2 * sB2 + sE2) * sB2)
    )


def asymptotic_bounds_peak(ch: WiretapChannel, alpha: float) -> AsymptoticBounds:
    """Limits as A grows; the lower limit is only known for alpha = 0.5."""
    _require_eavesdropper(ch)
    _check_alpha(alpha)
    kappa = ch.H_B * ch.noise_E.dependent_variance / (ch.H_E * ch.noise_B.dependent_variance)
    upper_inf = 0.5 * math.log(kappa)
    if abs(alpha - 0.5) < settings.ALPHA_SEAM_TOL:
        lower_inf = 0.5 * math.log(6.0 * kappa / (math.pi * math.e))
        return AsymptoticBounds(
            lower_inf=lower_inf, upper_inf=upper_inf, gap=0.5 * math.log(math.pi * math.e / 6.0)
        )
    return AsymptoticBounds(lower_inf=None, upper_inf=upper_inf, gap=None)


def secrecy_bounds_peak(ch: WiretapChannel, con: PeakConstraint) -> SecrecyBounds:
    return SecrecyBounds.from_raw(
        lower_bound_peak(ch, con),
        upper_bound_peak(ch, con),
        eavesdropper_dominates=ch.eavesdropper_dominates(),
    )


def secrecy_bounds_peak_si(ch: WiretapChannel, con: PeakConstraint) -> SecrecyBounds:
    return SecrecyBounds.from_raw(
        lower_bound_peak_si(ch, con),
        upper_bound_peak_si(ch, con),
        eavesdropper_dominates=ch.eavesdropper_dominates(signal_independent=True),
    )
