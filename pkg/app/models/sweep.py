#!/usr/bin/env python3
"""
Pydantic models for parameter sweeps
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.channel import NoiseParams


class SweepAxis(str, Enum):
    """Swept parameter"""
    P_DB = "P_DB"
    A_DB = "A_DB"
    RATIO_HB_HE = "RATIO_HB_HE"
    XI = "XI"


class SweepMode(str, Enum):
    """Bound family evaluated at each grid point"""
    AVG = "AVG"
    PEAK = "PEAK"
    AVG_SI = "AVG_SI"
    PEAK_SI = "PEAK_SI"
    ASYMPTOTIC = "ASYMPTOTIC"


def _default_noise() -> NoiseParams:
    return NoiseParams(sigma2=1.0, varsigma2=1.5)


class SweepConfig(BaseModel):
    """One sweep series.

    Intensities are in dB relative to 1 W. The RATIO_HB_HE axis is
    log-spaced between ``start`` and ``stop`` (plain ratios); other axes are
    linearly spaced. H_E is always H_B / ratio.
    """
    model_config = ConfigDict(frozen=True)

    axis: SweepAxis
    start: float
    stop: float
    steps: int = Field(ge=2)
    mode: SweepMode
    xi: float = Field(default=0.3, gt=0, le=1)
    P_db: Optional[float] = None
    A_db: Optional[float] = None
    peak_to_nominal: float = Field(default=1.5, ge=1, description="A / P")
    ratio: float = Field(default=1000.0, gt=0)
    H_B: float = Field(default=1.0, gt=0)
    noise_B: NoiseParams = Field(default_factory=_default_noise)
    noise_E: NoiseParams = Field(default_factory=_default_noise)
    peak_asymptotics: bool = False
    label: str = ""

    @model_validator(mode="after")
    def _check_fixed_parameters(self) -> "SweepConfig":
        if not self.start < self.stop:
            raise ValueError("sweep range requires start < stop")
        if self.axis is SweepAxis.RATIO_HB_HE and self.start <= 0:
            raise ValueError("ratio axis must start above 0")
        if self.axis is SweepAxis.XI and not (0 < self.start and self.stop <= 1):
            raise ValueError("xi axis must lie in (0, 1]")
        peak = self.mode in (SweepMode.PEAK, SweepMode.PEAK_SI) or (
            self.mode is SweepMode.ASYMPTOTIC and self.peak_asymptotics
        )
        if self.mode is SweepMode.ASYMPTOTIC:
            if self.axis not in (SweepAxis.RATIO_HB_HE, SweepAxis.XI):
                raise ValueError("asymptotic sweeps run along RATIO_HB_HE or XI")
            return self
        if peak:
            if self.axis not in (SweepAxis.A_DB, SweepAxis.P_DB) and self.A_db is None and self.P_db is None:
                raise ValueError("peak sweeps need A_db (or P_db) when A is not the swept axis")
        else:
            if self.axis is SweepAxis.A_DB:
                raise ValueError("average-constraint sweeps cannot sweep A")
            if self.axis is not SweepAxis.P_DB and self.P_db is None:
                raise ValueError("average-constraint sweeps need P_db when P is not the swept axis")
        return self


class SweepRow(BaseModel):
    """One CSV row"""
    axis_value: float
    lower_raw: Optional[float] = None
    upper_raw: Optional[float] = None
    lower: Optional[float] = None
    upper: Optional[float] = None
    branch: str = ""
    gap: Optional[float] = None
    series: str = ""
    error: str = ""
