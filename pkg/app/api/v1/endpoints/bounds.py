#!/usr/bin/env python3
"""
Secrecy-bound endpoints
"""

from enum import Enum
from typing import Any, Optional

from fastapi import APIRouter, Query
from pydantic import BaseModel

from app.api.v1.errors import http_error
from app.core.exceptions import DomainError, SecrecyBoundsError
from app.models.bounds import AsymptoticBounds, AvgConstraint, PeakConstraint, SecrecyBounds
from app.models.channel import NoiseParams, WiretapChannel
from app.services.bounds_avg import asymptotic_bounds_avg, secrecy_bounds_avg, secrecy_bounds_avg_si
from app.services.bounds_peak import asymptotic_bounds_peak, secrecy_bounds_peak, secrecy_bounds_peak_si
from app.services.channel import make_channel
from app.utils.helpers import build_model

router = APIRouter()


class ChannelSpec(BaseModel):
    """Channel gains and noise; noise defaults to sigma^2 = 1, varsigma^2 = 1.5"""
    H_B: float = 1.0
    H_E: float
    noise_B: NoiseParams = NoiseParams(sigma2=1.0, varsigma2=1.5)
    noise_E: NoiseParams = NoiseParams(sigma2=1.0, varsigma2=1.5)

    def build(self) -> WiretapChannel:
        return make_channel(self.H_B, self.H_E, self.noise_B, self.noise_E)


class AvgRequest(BaseModel):
    channel: ChannelSpec
    xi: float
    P: float


class PeakRequest(BaseModel):
    channel: ChannelSpec
    xi: float
    P: float
    A: float


class ConstraintKind(str, Enum):
    AVG = "avg"
    PEAK = "peak"


class AsymptoticRequest(BaseModel):
    channel: ChannelSpec
    constraint: ConstraintKind = ConstraintKind.AVG
    alpha: Optional[float] = None


@router.post("/avg", response_model=SecrecyBounds)
def bounds_avg(request: AvgRequest, signal_independent: bool = Query(False)) -> Any:
    """Bounds under the average-intensity constraint"""
    try:
        ch = request.channel.build()
        con = build_model(AvgConstraint, xi=request.xi, P=request.P)
        if signal_independent:
            return secrecy_bounds_avg_si(ch, con)
        return secrecy_bounds_avg(ch, con)
    except SecrecyBoundsError as exc:
        raise http_error(exc) from exc


@router.post("/peak", response_model=SecrecyBounds)
def bounds_peak(request: PeakRequest, signal_independent: bool = Query(False)) -> Any:
    """Bounds under the peak- and average-intensity constraints"""
    try:
        ch = request.channel.build()
        con = build_model(PeakConstraint, xi=request.xi, P=request.P, A=request.A)
        if signal_independent:
            return secrecy_bounds_peak_si(ch, con)
        return secrecy_bounds_peak(ch, con)
    except SecrecyBoundsError as exc:
        raise http_error(exc) from exc


@router.post("/asymptotic", response_model=AsymptoticBounds)
def bounds_asymptotic(request: AsymptoticRequest) -> Any:
    """High-intensity limits"""
    try:
        ch = request.channel.build()
        if request.constraint is ConstraintKind.AVG:
            return asymptotic_bounds_avg(ch)
        if request.alpha is None:
            raise DomainError("alpha is required for peak-constraint limits")
        return asymptotic_bounds_peak(ch, request.alpha)
    except SecrecyBoundsError as exc:
        raise http_error(exc) from exc
