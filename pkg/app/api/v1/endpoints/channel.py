#!/usr/bin/env python3
"""
Channel endpoints
"""

import math
from typing import Any

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel

from app.api.v1.errors import http_error
from app.core.exceptions import SecrecyBoundsError
from app.models.channel import Geometry, LambertianParams, NoiseParams
from app.services.scenario import Scenario

router = APIRouter()


class GainRequest(BaseModel):
    """LED, receiver geometry and noise of both receivers"""
    lambertian: LambertianParams
    bob: Geometry
    eve: Geometry
    noise_B: NoiseParams = NoiseParams(sigma2=1.0, varsigma2=1.5)
    noise_E: NoiseParams = NoiseParams(sigma2=1.0, varsigma2=1.5)


@router.post("/gain")
def channel_gain(request: GainRequest) -> Any:
    """LoS gains and derived channel quantities"""
    try:
        ch = Scenario(**request.model_dump()).channel()
    except SecrecyBoundsError as exc:
        raise http_error(exc) from exc

    return {
        "H_B": ch.H_B,
        "H_E": ch.H_E,
        "gain_ratio": ch.gain_ratio if math.isfinite(ch.gain_ratio) else None,
        "M": ch.M,
        "N": ch.N,
        "degenerate_eavesdropper": ch.degenerate_eavesdropper,
        "eavesdropper_dominates": ch.eavesdropper_dominates(),
    }
