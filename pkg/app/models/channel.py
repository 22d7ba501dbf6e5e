#!/usr/bin/env python3
"""
Pydantic models for the wiretap channel
"""

import math
from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator


class Side(str, Enum):
    """Receiver of the wiretap channel"""
    BOB = "bob"
    EVE = "eve"


class LambertianParams(BaseModel):
    """LED emission and photodiode front-end parameters"""
    model_config = ConfigDict(frozen=True)

    m: float = Field(gt=0, description="Lambertian emission order")
    A_r: float = Field(gt=0, description="photodiode area (m^2)")
    T_s: float = Field(gt=0, description="optical filter gain")
    g: float = Field(gt=0, description="concentrator gain")
    Psi: float = Field(gt=0, le=math.pi / 2, description="field of view (rad)")


class Geometry(BaseModel):
    """Line-of-sight link geometry"""
    model_config = ConfigDict(frozen=True)

    D: float = Field(gt=0, description="link distance (m)")
    phi: float = Field(ge=0, lt=math.pi / 2, description="irradiance angle (rad)")
    psi: float = Field(ge=0, lt=math.pi, description="incidence angle (rad)")


class NoiseParams(BaseModel):
    """Signal-independent variance and signal-dependent ratio of one receiver"""
    model_config = ConfigDict(frozen=True)

    sigma2: float = Field(gt=0, description="signal-independent noise variance (W^2)")
    varsigma2: float = Field(gt=0, description="signal-dependent to signal-independent ratio")

    @property
    def dependent_variance(self) -> float:
        """varsigma^2 sigma^2"""
        return self.varsigma2 * self.sigma2


class WiretapChannel(BaseModel):
    """Gains and noise of the legitimate (Bob) and eavesdropper (Eve) links"""
    model_config = ConfigDict(frozen=True)

    H_B: float = Field(gt=0)
    H_E: float = Field(ge=0)
    noise_B: NoiseParams
    noise_E: NoiseParams

    @field_validator("H_B", "H_E")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("gain must be finite")
        return value

    @computed_field
    @property
    def M(self) -> float:
        return (
            self.H_E ** 2 * self.noise_B.dependent_variance / self.H_B
            + self.H_E * self.noise_E.dependent_variance
        )

    @computed_field
    @property
    def N(self) -> float:
        return self.H_E ** 2 * self.noise_B.sigma2 / self.H_B ** 2 + self.noise_E.sigma2

    @property
    def gain_ratio(self) -> float:
        """H_B / H_E, infinite for a blind eavesdropper"""
        return math.inf if self.H_E == 0 else self.H_B / self.H_E

    @property
    def degenerate_eavesdropper(self) -> bool:
        return self.H_E == 0

    def receiver(self, side: Side) -> Tuple[float, NoiseParams]:
        """Gain and noise of one receiver"""
        if Side(side) is Side.BOB:
            return self.H_B, self.noise_B
        return self.H_E, self.noise_E

    def eavesdropper_dominates(self, signal_independent: bool = False) -> bool:
        """True when Bob's output is a degraded copy of Eve's.

        Scaling Eve's output by H_B/H_E and adding independent noise yields
        Bob's output iff both noise components at Eve, rescaled, are no larger
        than Bob's. The secrecy capacity is zero in that case.
        """
        if self.H_E == 0:
            return False
        ratio = self.H_B / self.H_E
        if ratio ** 2 * self.noise_E.sigma2 > self.noise_B.sigma2:
            return False
        if signal_independent:
            return True
        return ratio * self.noise_E.dependent_variance <= self.noise_B.dependent_variance
