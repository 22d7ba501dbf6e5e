#!/usr/bin/env python3
"""
Input-distribution endpoints
"""

from typing import Any

import numpy as np
from fastapi import APIRouter, Query

from app.api.v1.errors import http_error
from app.core.exceptions import SecrecyBoundsError
from app.services.bounds_peak import maxent_pdf

router = APIRouter()


@router.get("/maxent")
def maxent_distribution(
    alpha: float = Query(..., description="mean-to-peak ratio"),
    A: float = Query(..., gt=0, description="peak intensity (W)"),
    points: int = Query(101, ge=2, le=10001),
) -> Any:
    """Maxentropic PDF on [0, A] with mean alpha A, sampled on a uniform grid"""
    try:
        pdf = maxent_pdf(alpha, A)
        xs = np.linspace(0.0, A, points)
        density = pdf.eval(xs)
    except SecrecyBoundsError as exc:
        raise http_error(exc) from exc

    return {
        "alpha": alpha,
        "A": A,
        "c": pdf.c,
        "mean": pdf.mean(),
        "variance": pdf.variance(),
        "entropy": pdf.entropy(),
        "x": xs.tolist(),
        "f": np.asarray(density, dtype=float).tolist(),
    }
