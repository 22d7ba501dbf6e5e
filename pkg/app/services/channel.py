#!/usr/bin/env python3
"""
Channel construction: Lambertian LoS gain and validated wiretap channels
"""

import math
from typing import Mapping, Union

from pydantic import ValidationError

from app.core.exceptions import InvalidParameterError
from app.models.channel import Geometry, LambertianParams, NoiseParams, WiretapChannel
from app.utils.helpers import build_model


def los_gain(geom: Geometry, lam: LambertianParams) -> float:
    """Line-of-sight DC gain of a Lambertian LED link.

    Returns (m+1) A_r / (2 pi D^2) T_s g cos^m(phi) cos(psi) inside the field
    of view and exactly 0 outside it.
    """
    if geom.psi > lam.Psi:
        return 0.0
    return (
        (lam.m + 1.0) * lam.A_r / (2.0 * math.pi * geom.D ** 2)
        * lam.T_s * lam.g
        * math.cos(geom.phi) ** lam.m
        * math.cos(geom.psi)
    )


def _as_noise(noise: Union[NoiseParams, Mapping[str, float]]) -> NoiseParams:
    if isinstance(noise, NoiseParams):
        return noise
    return NoiseParams(**noise)


def make_channel(
    H_B: float,
    H_E: float,
    noise_B: Union[NoiseParams, Mapping[str, float]],
    noise_E: Union[NoiseParams, Mapping[str, float]],
) -> WiretapChannel:
    """Build a validated WiretapChannel.

    Raises:
        InvalidParameterError: naming every field that violates its invariant.
    """
    try:
        noise_B = _as_noise(noise_B)
        noise_E = _as_noise(noise_E)
    except ValidationError as exc:
        fields = [".".join(str(part) for part in err["loc"]) for err in exc.errors()]
        raise InvalidParameterError(
            f"invalid noise parameters: {', '.join(fields)}", {"fields": fields}
        ) from exc
    return build_model(WiretapChannel, H_B=H_B, H_E=H_E, noise_B=noise_B, noise_E=noise_E)


def reference_channel(ratio: float, sigma2: float = 1.0, varsigma2: float = 1.5, H_B: float = 1.0) -> WiretapChannel:
    """Channel with identical noise at both receivers and H_E = H_B / ratio."""
    noise = NoiseParams(sigma2=sigma2, varsigma2=varsigma2)
    return make_channel(H_B, H_B / ratio, noise, noise)
