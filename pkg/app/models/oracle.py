#!/usr/bin/env python3
"""
Pydantic models for the numerical oracle
"""

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings


class QuadratureSpec(BaseModel):
    """Tolerances for the nested adaptive quadrature"""
    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default_factory=lambda: settings.QUAD_REL_TOL, gt=0)
    abs_tol: float = Field(default_factory=lambda: settings.QUAD_ABS_TOL, gt=0)
    max_subdivisions: int = Field(default_factory=lambda: settings.QUAD_MAX_SUBDIVISIONS, ge=50)
    y_truncation_sigmas: float = Field(default_factory=lambda: settings.Y_TRUNCATION_SIGMAS, ge=8)


class MonteCarloEstimate(BaseModel):
    """Sample-mean estimate with its standard error"""
    model_config = ConfigDict(frozen=True)

    estimate: float
    std_error: float
    n_samples: int
    seed: int
    workers: int = 1
