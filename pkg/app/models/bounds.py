#!/usr/bin/env python3
"""
Pydantic models for intensity constraints and secrecy-capacity bounds
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator


class BranchFlag(str, Enum):
    """Which branch of a two-case upper bound fired"""
    COND_HOLDS = "cond_holds"
    COND_FAILS = "cond_fails"


class AvgConstraint(BaseModel):
    """Non-negativity plus average intensity E[X] = xi P"""
    model_config = ConfigDict(frozen=True)

    xi: float = Field(gt=0, le=1, description="dimming target")
    P: float = Field(gt=0, allow_inf_nan=False, description="nominal optical intensity (W)")

    @property
    def mean(self) -> float:
        return self.xi * self.P


class PeakConstraint(BaseModel):
    """Average intensity xi P plus peak intensity A"""
    model_config = ConfigDict(frozen=True)

    xi: float = Field(gt=0, le=1, description="dimming target")
    P: float = Field(gt=0, allow_inf_nan=False, description="nominal optical intensity (W)")
    A: float = Field(gt=0, allow_inf_nan=False, description="peak optical intensity (W)")

    @model_validator(mode="after")
    def _nominal_below_peak(self) -> "PeakConstraint":
        if self.P > self.A:
            raise ValueError("nominal intensity P must not exceed peak intensity A")
        return self

    @computed_field
    @property
    def alpha(self) -> float:
        return self.xi * self.P / self.A

    @property
    def mean(self) -> float:
        return self.xi * self.P


class SecrecyBounds(BaseModel):
    """Lower and upper bound pair in nats per transmission"""
    model_config = ConfigDict(frozen=True)

    lower_raw: float
    upper_raw: float
    lower: float
    upper: float
    branch_upper: Optional[BranchFlag] = None
    eavesdropper_dominates: bool = False

    @computed_field
    @property
    def gap(self) -> float:
        return self.upper_raw - self.lower_raw

    @classmethod
    def from_raw(
        cls,
        lower_raw: float,
        upper_raw: float,
        branch_upper: Optional[BranchFlag] = None,
        eavesdropper_dominates: bool = False,
    ) -> "SecrecyBounds":
        """Clamp raw bounds at zero; both are zero and no branch is reported when Eve dominates."""
        if eavesdropper_dominates:
            lower, upper = 0.0, 0.0
            branch_upper = None
        else:
            lower, upper = max(lower_raw, 0.0), max(upper_raw, 0.0)
        return cls(
            lower_raw=lower_raw,
            upper_raw=upper_raw,
            lower=lower,
            upper=upper,
            branch_upper=branch_upper,
            eavesdropper_dominates=eavesdropper_dominates,
        )


class AsymptoticBounds(BaseModel):
    """High-intensity limits of the bounds"""
    model_config = ConfigDict(frozen=True)

    lower_inf: Optional[float] = None
    upper_inf: float
    gap: Optional[float] = None
