#!/usr/bin/env python3
"""
Secrecy-capacity bounds under non-negativity and average-intensity constraints

All values are in nats per transmission. Raw bounds are returned unclamped;
``secrecy_bounds_*`` assemble clamped ``SecrecyBounds``.
"""

import math
from typing import Tuple

from app.core.exceptions import DomainError
from app.models.bounds import AsymptoticBounds, AvgConstraint, BranchFlag, SecrecyBounds
from app.models.channel import NoiseParams, WiretapChannel
from app.services.specfun import scaled_ei_neg

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
LOG_2PI = math.log(2.0 * math.pi)


def f_low(H_B: float, xiP: float, noise_B: NoiseParams) -> float:
    """Output-minus-input entropy term for the exponential input.

    Decreases monotonically in xiP towards ln(H_B).
    """
    if not (H_B > 0 and xiP > 0):
        raise DomainError("f_low requires positive gain and mean intensity", {"H_B": H_B, "xiP": xiP})
    s = noise_B.dependent_variance
    u = H_B * xiP / s
    # sqrt(u(u+2)) - (u+1) rewritten without cancellation
    return math.log(H_B) + 0.5 * math.log1p(2.0 / u) - 1.0 / (u + 1.0 + math.sqrt(u * (u + 2.0)))


def _require_eavesdropper(ch: WiretapChannel) -> None:
    if ch.H_E <= 0:
        raise DomainError(
            "closed form requires H_E > 0; use the oracle for a blind eavesdropper",
            {"H_E": ch.H_E},
        )


def output_variance_exponential(H: float, noise: NoiseParams, xiP: float) -> float:
    """Variance of H X + sqrt(H X) Z1 + Z0 for exponential X with mean xiP."""
    return H ** 2 * xiP ** 2 + H * xiP * noise.dependent_variance + noise.sigma2


def expected_log_ratio_exponential(ch: WiretapChannel, xiP: float) -> float:
    """E[ln((1 + H_E vs_E X) / (1 + H_B vs_B X))] for exponential X with mean xiP."""
    _require_eavesdropper(ch)
    return scaled_ei_neg(1.0 / (ch.H_B * ch.noise_B.varsigma2 * xiP)) - scaled_ei_neg(
        1.0 / (ch.H_E * ch.noise_E.varsigma2 * xiP)
    )


def lower_bound_avg(ch: WiretapChannel, con: AvgConstraint) -> float:
    """Lower bound achieved by the exponential input (raw, unclamped)."""
    _require_eavesdropper(ch)
    xiP = con.mean
    var_E = output_variance_exponential(ch.H_E, ch.noise_E, xiP)
    gaussian_part = 0.5 * (
        1.0
        + 2.0 * math.log(xiP)
        + math.log(ch.noise_E.sigma2)
        - LOG_2PI
        - math.log(ch.noise_B.sigma2)
        - math.log(var_E)
    )
    return (
        gaussian_part
        + f_low(ch.H_B, xiP, ch.noise_B)
        + 0.5 * expected_log_ratio_exponential(ch, xiP)
    )


def upper_bound_avg(ch: WiretapChannel, con: AvgConstraint) -> Tuple[float, BranchFlag]:
    """Two-branch upper bound; returns the value and the branch that fired."""
    _require_eavesdropper(ch)
    H_B, H_E, M = ch.H_B, ch.H_E, ch.M
    s_B = ch.noise_B.dependent_variance
    s_E = ch.noise_E.dependent_variance
    xiP = con.mean

    rhs = (H_E / H_B) * (math.sqrt(H_B * s_B / (2.0 * math.pi * M)) + 0.5 * H_B * math.sqrt(xiP / M))
    if INV_SQRT_2PI >= rhs:
        value = math.log(
            math.sqrt(4.0 * math.e * H_E * s_E / (math.pi ** 2 * M))
            + math.sqrt(2.0 * math.e * xiP * H_B * H_E * s_E / (M * math.pi * s_B))
        )
        return value, BranchFlag.COND_HOLDS
    value = 0.5 * math.log(4.0 * math.e * H_B * s_E / (math.pi ** 2 * H_E * s_B))
    return value, BranchFlag.COND_FAILS


def _require_signal(ch: WiretapChannel, con: AvgConstraint) -> None:
    if not (ch.H_B > 0 and con.mean > 0):
        raise DomainError("signal-independent bounds require H_B > 0 and xi P > 0")


def lower_bound_avg_si(ch: WiretapChannel, con: AvgConstraint) -> float:
    """Lower bound for signal-independent noise (varsigma ignored)."""
    _require_signal(ch, con)
    xiP = con.mean
    sB2, sE2 = ch.noise_B.sigma2, ch.noise_E.sigma2
    return 0.5 * (
        1.0
        + 2.0 * math.log(ch.H_B * xiP)
        + math.log(sE2)
        - LOG_2PI
        - math.log(sB2)
        - math.log(ch.H_E ** 2 * xiP ** 2 + sE2)
    )


def upper_bound_avg_si(ch: WiretapChannel, con: AvgConstraint) -> Tuple[float, BranchFlag]:
    """Two-branch upper bound for signal-independent noise."""
    _require_signal(ch, con)
    H_B, H_E = ch.H_B, ch.H_E
    sigma_B = math.sqrt(ch.noise_B.sigma2)
    sigma_E = math.sqrt(ch.noise_E.sigma2)
    xiP = con.mean

    level = sigma_B * INV_SQRT_2PI + 0.5 * H_B * xiP
    rhs = H_E / math.sqrt(H_E ** 2 * sigma_B ** 2 + H_B ** 2 * sigma_E ** 2) * level
    if INV_SQRT_2PI >= rhs:
        denominator = math.sqrt(
            2.0 * math.pi * math.e * sigma_B ** 2
            * (1.0 + H_E ** 2 * sigma_B ** 2 / (H_B ** 2 * sigma_E ** 2))
        )
        return math.log(4.0 * math.e * level / denominator), BranchFlag.COND_HOLDS
    value = math.log(2.0 * math.sqrt(math.e) * H_B * sigma_E / (math.pi * H_E * sigma_B))
    return value, BranchFlag.COND_FAILS


def asymptotic_bounds_avg(ch: WiretapChannel) -> AsymptoticBounds:
    """Limits of both bounds as P grows without bound."""
    _require_eavesdropper(ch)
    kappa = ch.H_B * ch.noise_E.dependent_variance / (ch.H_E * ch.noise_B.dependent_variance)
    lower_inf = 0.5 * math.log(math.e * kappa / (2.0 * math.pi))
    upper_inf = 0.5 * math.log(4.0 * math.e * kappa / math.pi ** 2)
    return AsymptoticBounds(lower_inf=lower_inf, upper_inf=upper_inf, gap=0.5 * math.log(8.0 / math.pi))


def secrecy_bounds_avg(ch: WiretapChannel, con: AvgConstraint) -> SecrecyBounds:
    upper, branch = upper_bound_avg(ch, con)
    return SecrecyBounds.from_raw(
        lower_bound_avg(ch, con), upper, branch, ch.eavesdropper_dominates()
    )


def secrecy_bounds_avg_si(ch: WiretapChannel, con: AvgConstraint) -> SecrecyBounds:
    upper, branch = upper_bound_avg_si(ch, con)
    return SecrecyBounds.from_raw(
        lower_bound_avg_si(ch, con), upper, branch, ch.eavesdropper_dominates(signal_independent=True)
    )
