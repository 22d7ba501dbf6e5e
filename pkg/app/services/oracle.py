#!/usr/bin/env python3
"""
Numerical oracle for secrecy rates

Evaluates output entropies of Y = H X + sqrt(H X) Z1 + Z0 by nested adaptive
quadrature (inner integral over the input, outer over the output) and by
seeded Monte Carlo. Every closed-form expectation and variance used by the
bounds is checked against this module.
"""

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from scipy import integrate

from app.core.config import settings
from app.core.exceptions import ConvergenceError, DomainError
from app.models.channel import Side, WiretapChannel
from app.models.oracle import MonteCarloEstimate
from app.models.oracle import QuadratureSpec
from app.services.distributions import DistributionKind, InputDistribution

logger = structlog.get_logger(__name__)

LOG_2PI_E = math.log(2.0 * math.pi * math.e)
EXP_TAIL_MEANS = 40.0
MIN_MC_SAMPLES = 10_000
_ERROR_SLACK = 1e3

ScalarFn = Callable[[float], float]


def _integrate(
    func: ScalarFn,
    a: float,
    b: float,
    rel_tol: float,
    abs_tol: float,
    limit: int,
    points: Optional[Sequence[float]] = None,
) -> float:
    """scipy quad with a hard failure when the error estimate is far off budget."""
    if points is not None and math.isfinite(a) and math.isfinite(b):
        points = [p for p in points if a < p < b] or None
    else:
        points = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr = integrate.quad(
            func, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=limit, points=points
        )
    budget = max(abs_tol, rel_tol * abs(value))
    if not math.isfinite(value) or abserr > _ERROR_SLACK * budget:
        raise ConvergenceError(
            "adaptive quadrature did not converge",
            {"a": a, "b": b, "value": value, "abserr": abserr, "budget": budget},
        )
    return value


def _density_fn(dist: InputDistribution) -> ScalarFn:
    """Scalar density of dist, for use inside quadrature loops."""
    if dist.kind is DistributionKind.EXPONENTIAL:
        mu = dist.mu
        return lambda x: math.exp(-x / mu) / mu if x >= 0.0 else 0.0
    if dist.kind is DistributionKind.UNIFORM:
        A = dist.A
        inv = 1.0 / A
        return lambda x: inv if 0.0 <= x <= A else 0.0
    if dist.kind is DistributionKind.TRUNC_EXP:
        A, c = dist.A, dist.c
        t = c * A
        if c > 0:
            norm = c / (-math.expm1(-t))
            return lambda x: norm * math.exp(c * (x - A)) if 0.0 <= x <= A else 0.0
        norm = c / math.expm1(t)
        return lambda x: norm * math.exp(c * x) if 0.0 <= x <= A else 0.0
    raise DomainError("a point mass has no density")


def _gaussian(y: float, mean: float, var: float) -> float:
    return math.exp(-((y - mean) ** 2) / (2.0 * var)) / math.sqrt(2.0 * math.pi * var)


def conditional_pdf(y, x, side: Side, ch: WiretapChannel):
    """Density of Y at y given X = x: N(H x, (1 + H x varsigma^2) sigma^2)."""
    H, noise = ch.receiver(side)
    ys = np.asarray(y, dtype=float)
    xs = np.asarray(x, dtype=float)
    var = (1.0 + H * xs * noise.varsigma2) * noise.sigma2
    values = np.exp(-((ys - H * xs) ** 2) / (2.0 * var)) / np.sqrt(2.0 * np.pi * var)
    return float(values) if values.ndim == 0 else values


def expectation(dist: InputDistribution, func: ScalarFn, spec: Optional[QuadratureSpec] = None) -> float:
    """E[func(X)] by adaptive quadrature against dist."""
    spec = spec or QuadratureSpec()
    if dist.is_point_mass:
        return func(dist.x0)

    density = _density_fn(dist)
    if dist.kind is DistributionKind.EXPONENTIAL:
        mu = dist.mu

        # x = mu t / (1 - t) maps [0, inf) onto [0, 1)
        def compact(t: float) -> float:
            if t >= 1.0:
                return 0.0
            x = mu * t / (1.0 - t)
            weight = math.exp(-x / mu) / (1.0 - t) ** 2
            return func(x) * weight if weight > 0.0 else 0.0

        return _integrate(compact, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_subdivisions)

    A = dist.A
    points = None
    t = dist.c * A
    if abs(t) > 10.0:
        width = A / abs(t)
        points = [width, 4.0 * width] if t < 0 else [A - 4.0 * width, A - width]
    return _integrate(
        lambda x: func(x) * density(x), 0.0, A, spec.rel_tol, spec.abs_tol, spec.max_subdivisions, points
    )


def expect_log_ratio(dist: InputDistribution, ch: WiretapChannel, spec: Optional[QuadratureSpec] = None) -> float:
    """E[ln((1 + H_E vs_E X)/(1 + H_B vs_B X))] by quadrature."""
    a_B = ch.H_B * ch.noise_B.varsigma2
    a_E = ch.H_E * ch.noise_E.varsigma2
    return expectation(dist, lambda x: math.log1p(a_E * x) - math.log1p(a_B * x), spec)


def conditional_entropy(side: Side, dist: InputDistribution, ch: WiretapChannel, spec: Optional[QuadratureSpec] = None) -> float:
    """h(Y|X) = 1/2 ln(2 pi e sigma^2) + 1/2 E[ln(1 + H varsigma^2 X)]"""
    H, noise = ch.receiver(side)
    a = H * noise.varsigma2
    log_term = 0.0 if a == 0.0 else expectation(dist, lambda x: math.log1p(a * x), spec)
    return 0.5 * (LOG_2PI_E + math.log(noise.sigma2)) + 0.5 * log_term


def _effective_upper(dist: InputDistribution) -> float:
    if dist.kind is DistributionKind.EXPONENTIAL:
        return EXP_TAIL_MEANS * dist.mu
    return dist.support()[1]


def marginal_pdf(y: float, side: Side, dist: InputDistribution, ch: WiretapChannel, spec: Optional[QuadratureSpec] = None) -> float:
    """f_Y(y) = int f(y|x) f_X(x) dx, integrated around the ridge x = y/H."""
    spec = spec or QuadratureSpec()
    H, noise = ch.receiver(side)
    sigma2, varsigma2 = noise.sigma2, noise.varsigma2
    if dist.is_point_mass:
        return _gaussian(y, H * dist.x0, (1.0 + H * dist.x0 * varsigma2) * sigma2)
    if H == 0.0:
        return _gaussian(y, 0.0, sigma2)

    density = _density_fn(dist)
    lo, hi = dist.support()
    x_star = min(max(y / H, lo), _effective_upper(dist))
    width = math.sqrt((1.0 + H * x_star * varsigma2) * sigma2) / H
    k = spec.y_truncation_sigmas
    window_lo = max(lo, x_star - k * width)
    window_hi = min(hi, x_star + k * width)

    def integrand(x: float) -> float:
        var = (1.0 + H * x * varsigma2) * sigma2
        return math.exp(-((y - H * x) ** 2) / (2.0 * var)) / math.sqrt(2.0 * math.pi * var) * density(x)

    rel_tol = spec.rel_tol / 10.0
    abs_tol = spec.abs_tol / 10.0
    total = 0.0
    for a, b in ((lo, window_lo), (window_lo, window_hi), (window_hi, hi)):
        if b > a:
            total += _integrate(integrand, a, b, rel_tol, abs_tol, spec.max_subdivisions, [x_star])
    return total


def marginal_entropy(side: Side, dist: InputDistribution, ch: WiretapChannel, spec: Optional[QuadratureSpec] = None) -> float:
    """h(Y) = -int f_Y ln f_Y dy over the truncated output range."""
    spec = spec or QuadratureSpec()
    H, noise = ch.receiver(side)
    if dist.is_point_mass:
        return 0.5 * (LOG_2PI_E + math.log((1.0 + H * dist.x0 * noise.varsigma2) * noise.sigma2))
    if H == 0.0:
        return 0.5 * (LOG_2PI_E + math.log(noise.sigma2))

    lo = dist.support()[0]
    hi = _effective_upper(dist)
    k = spec.y_truncation_sigmas
    sigma_0 = math.sqrt(noise.sigma2)
    sigma_max = math.sqrt((1.0 + H * hi * noise.varsigma2) * noise.sigma2)
    y_lo = H * lo - k * sigma_max
    y_hi = H * hi + k * sigma_max

    def integrand(y: float) -> float:
        f = marginal_pdf(y, side, dist, ch, spec)
        return -f * math.log(f) if f > 0.0 else 0.0

    points = [H * lo - sigma_0, H * lo, H * lo + sigma_0, 0.5 * H * (lo + hi), H * hi]
    return _integrate(integrand, y_lo, y_hi, spec.rel_tol, spec.abs_tol, spec.max_subdivisions, points)


def secrecy_rate(dist: InputDistribution, ch: WiretapChannel, spec: Optional[QuadratureSpec] = None) -> float:
    """I(X; Y_B) - I(X; Y_E) achieved by dist, in nats."""
    spec = spec or QuadratureSpec()
    bob = marginal_entropy(Side.BOB, dist, ch, spec) - conditional_entropy(Side.BOB, dist, ch, spec)
    eve = marginal_entropy(Side.EVE, dist, ch, spec) - conditional_entropy(Side.EVE, dist, ch, spec)
    return bob - eve


def output_variance(dist: InputDistribution, side: Side, ch: WiretapChannel) -> float:
    """H^2 var(X) + H E[X] varsigma^2 sigma^2 + sigma^2"""
    H, noise = ch.receiver(side)
    return H ** 2 * dist.variance() + H * dist.mean() * noise.dependent_variance + noise.sigma2


def _simulate_output(rng: np.random.Generator, x: np.ndarray, side: Side, ch: WiretapChannel) -> np.ndarray:
    H, noise = ch.receiver(side)
    dependent = rng.normal(0.0, math.sqrt(noise.dependent_variance), x.size)
    independent = rng.normal(0.0, math.sqrt(noise.sigma2), x.size)
    return H * x + np.sqrt(H * x) * dependent + independent


def _information_density_chunk(
    dist: InputDistribution,
    ch: WiretapChannel,
    n: int,
    seed_seq: np.random.SeedSequence,
    spec: QuadratureSpec,
) -> np.ndarray:
    """Per-sample contributions to I(X;Y_B) - I(X;Y_E)."""
    rng = np.random.default_rng(seed_seq)
    x = dist.sample(rng, n)
    contributions = np.zeros(n)
    for side, sign in ((Side.BOB, 1.0), (Side.EVE, -1.0)):
        H, noise = ch.receiver(side)
        y = _simulate_output(rng, x, side, ch)
        log_marginal = np.array(
            [math.log(max(marginal_pdf(float(v), side, dist, ch, spec), np.finfo(float).tiny)) for v in y]
        )
        conditional = 0.5 * (LOG_2PI_E + np.log((1.0 + H * noise.varsigma2 * x) * noise.sigma2))
        contributions += sign * (-log_marginal - conditional)
    return contributions


def _partition(n_samples: int, workers: int) -> List[int]:
    base, extra = divmod(n_samples, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def mc_secrecy_rate(
    dist: InputDistribution,
    ch: WiretapChannel,
    n_samples: int,
    seed: int,
    workers: Optional[int] = None,
    spec: Optional[QuadratureSpec] = None,
) -> MonteCarloEstimate:
    """Monte Carlo estimate of the secrecy rate.

    The sample budget is split across workers, each seeded from a child of
    SeedSequence(seed); results depend only on (seed, workers).
    """
    if n_samples < MIN_MC_SAMPLES:
        raise DomainError(f"Monte Carlo needs at least {MIN_MC_SAMPLES} samples", {"n_samples": n_samples})
    spec = spec or QuadratureSpec()
    workers = max(1, workers or settings.MC_WORKERS)
    seeds = np.random.SeedSequence(seed).spawn(workers)
    counts = _partition(n_samples, workers)
    logger.debug("mc_partition", n_samples=n_samples, workers=workers, seed=seed)

    if workers == 1:
        chunks = [_information_density_chunk(dist, ch, counts[0], seeds[0], spec)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                pool.map(
                    _information_density_chunk,
                    [dist] * workers,
                    [ch] * workers,
                    counts,
                    seeds,
                    [spec] * workers,
                )
            )
    samples = np.concatenate(chunks)
    return MonteCarloEstimate(
        estimate=float(samples.mean()),
        std_error=float(samples.std(ddof=1) / math.sqrt(samples.size)),
        n_samples=n_samples,
        seed=seed,
        workers=workers,
    )


def mc_output_variance(
    dist: InputDistribution, side: Side, ch: WiretapChannel, n_samples: int, seed: int
) -> MonteCarloEstimate:
    """Sample variance of Y simulated from the channel equation."""
    rng = np.random.default_rng(seed)
    x = dist.sample(rng, n_samples)
    y = _simulate_output(rng, x, side, ch)
    centered = y - y.mean()
    variance = float(np.mean(centered ** 2) * n_samples / (n_samples - 1))
    fourth = float(np.mean(centered ** 4))
    std_error = math.sqrt(max(fourth - variance ** 2, 0.0) / n_samples)
    return MonteCarloEstimate(estimate=variance, std_error=std_error, n_samples=n_samples, seed=seed)


def quadrature_moments(dist: InputDistribution, spec: Optional[QuadratureSpec] = None) -> Tuple[float, float, float]:
    """(total mass, mean, variance) of dist by quadrature."""
    spec = spec or QuadratureSpec()
    mass = expectation(dist, lambda x: 1.0, spec)
    mean = expectation(dist, lambda x: x, spec)
    second = expectation(dist, lambda x: (x - mean) ** 2, spec)
    return mass, mean, second
