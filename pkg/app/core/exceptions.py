#!/usr/bin/env python3
"""
Error hierarchy for the secrecy-bounds toolkit

Each error carries a stable ``code`` (used in sweep error rows and HTTP
responses) and the process ``exit_code`` the CLI returns for it.
"""

from typing import Any, Dict, Optional


class SecrecyBoundsError(Exception):
    """Base class for all toolkit errors"""

    code = "error"
    exit_code = 3

    def __init__(self, detail: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(detail)
        self.detail = detail
        self.context = dict(context or {})

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.code, "detail": self.detail, **self.context}


class DomainError(SecrecyBoundsError, ValueError):
    """Argument outside the documented domain of an operation"""

    code = "domain"
    exit_code = 2


class InvalidParameterError(DomainError):
    """Domain object failed validation"""

    code = "invalid_parameter"


class UnboundedSolutionError(DomainError):
    """Equation has no finite solution (e.g. alpha = 1)"""

    code = "unbounded"


class ScenarioError(SecrecyBoundsError):
    """Scenario file could not be parsed"""

    code = "scenario"
    exit_code = 2


class EiOverflowError(SecrecyBoundsError, OverflowError):
    """Unscaled exponential integral would overflow"""

    code = "overflow"


class ConvergenceError(SecrecyBoundsError, ArithmeticError):
    """Root finder or quadrature did not reach the requested tolerance"""

    code = "non_convergence"
