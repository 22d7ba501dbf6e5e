#!/usr/bin/env python3
"""
Translation of toolkit errors into HTTP responses
"""

from fastapi import HTTPException, status

from app.core.exceptions import DomainError, ScenarioError, SecrecyBoundsError


def http_error(exc: SecrecyBoundsError) -> HTTPException:
    """422 for bad input, 500 for numerical failures."""
    if isinstance(exc, (DomainError, ScenarioError)):
        status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    else:
        status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    return HTTPException(status_code=status_code, detail=exc.to_dict())
