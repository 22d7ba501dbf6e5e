#!/usr/bin/env python3
"""
Input intensity distributions used by the oracle
"""

import math
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from app.core.exceptions import DomainError
from app.services.bounds_peak import MaxentPdf, log_normalizer, mean_fraction, variance_fraction

ArrayLike = Union[float, np.ndarray]


class DistributionKind(str, Enum):
    """Input distribution families"""
    EXPONENTIAL = "exponential"
    UNIFORM = "uniform"
    TRUNC_EXP = "trunc_exp"
    POINT_MASS = "point_mass"


class InputDistribution:
    """Non-negative input intensity distribution with analytic moments"""

    def __init__(self, kind: DistributionKind, mean: float = 0.0, A: float = 0.0, c: float = 0.0, x0: float = 0.0):
        self.kind = DistributionKind(kind)
        self.mu = float(mean)
        self.A = float(A)
        self.c = float(c)
        self.x0 = float(x0)

    @classmethod
    def exponential(cls, mean: float) -> "InputDistribution":
        if not (mean > 0 and math.isfinite(mean)):
            raise DomainError("exponential mean must be positive", {"mean": mean})
        return cls(DistributionKind.EXPONENTIAL, mean=mean)

    @classmethod
    def uniform(cls, A: float) -> "InputDistribution":
        if not (A > 0 and math.isfinite(A)):
            raise DomainError("uniform support A must be positive", {"A": A})
        return cls(DistributionKind.UNIFORM, A=A)

    @classmethod
    def truncated_exponential(cls, c: float, A: float) -> "InputDistribution":
        if not (A > 0 and math.isfinite(A) and math.isfinite(c)):
            raise DomainError("truncated exponential needs finite c and positive A", {"c": c, "A": A})
        if c == 0.0:
            return cls.uniform(A)
        return cls(DistributionKind.TRUNC_EXP, A=A, c=c)

    @classmethod
    def from_maxent(cls, pdf: MaxentPdf) -> "InputDistribution":
        return cls.truncated_exponential(pdf.c, pdf.A)

    @classmethod
    def point_mass(cls, x0: float) -> "InputDistribution":
        if not (x0 >= 0 and math.isfinite(x0)):
            raise DomainError("point mass location must be non-negative", {"x0": x0})
        return cls(DistributionKind.POINT_MASS, x0=x0)

    def __repr__(self) -> str:
        return (
            f"InputDistribution(kind={self.kind.value}, mean={self.mean()!r}, "
            f"A={self.A!r}, c={self.c!r})"
        )

    @property
    def is_point_mass(self) -> bool:
        return self.kind is DistributionKind.POINT_MASS

    def support(self) -> Tuple[float, float]:
        if self.kind is DistributionKind.EXPONENTIAL:
            return 0.0, math.inf
        if self.kind is DistributionKind.POINT_MASS:
            return self.x0, self.x0
        return 0.0, self.A

    def _maxent(self) -> MaxentPdf:
        return MaxentPdf(alpha=mean_fraction(self.c * self.A), A=self.A, c=self.c)

    def eval(self, x: ArrayLike) -> ArrayLike:
        """Density at x; the point mass has no density and raises."""
        if self.kind is DistributionKind.POINT_MASS:
            raise DomainError("a point mass has no density")
        xs = np.asarray(x, dtype=float)
        if self.kind is DistributionKind.EXPONENTIAL:
            values = np.where(xs >= 0.0, np.exp(-np.maximum(xs, 0.0) / self.mu) / self.mu, 0.0)
        elif self.kind is DistributionKind.UNIFORM:
            values = np.where((xs >= 0.0) & (xs <= self.A), 1.0 / self.A, 0.0)
        else:
            values = np.asarray(self._maxent().eval(xs))
        return float(values) if values.ndim == 0 else values

    def mean(self) -> float:
        if self.kind is DistributionKind.EXPONENTIAL:
            return self.mu
        if self.kind is DistributionKind.UNIFORM:
            return self.A / 2.0
        if self.kind is DistributionKind.POINT_MASS:
            return self.x0
        return self.A * mean_fraction(self.c * self.A)

    def variance(self) -> float:
        if self.kind is DistributionKind.EXPONENTIAL:
            return self.mu ** 2
        if self.kind is DistributionKind.UNIFORM:
            return self.A ** 2 / 12.0
        if self.kind is DistributionKind.POINT_MASS:
            return 0.0
        return self.A ** 2 * variance_fraction(self.c * self.A)

    def entropy(self) -> Optional[float]:
        """Differential entropy; None for the point mass."""
        if self.kind is DistributionKind.EXPONENTIAL:
            return 1.0 + math.log(self.mu)
        if self.kind is DistributionKind.UNIFORM:
            return math.log(self.A)
        if self.kind is DistributionKind.POINT_MASS:
            return None
        t = self.c * self.A
        return math.log(self.A) + log_normalizer(t) - t * mean_fraction(t)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.kind is DistributionKind.EXPONENTIAL:
            return rng.exponential(self.mu, size)
        if self.kind is DistributionKind.UNIFORM:
            return rng.uniform(0.0, self.A, size)
        if self.kind is DistributionKind.POINT_MASS:
            return np.full(size, self.x0)
        return self._maxent().sample(rng, size)
