#!/usr/bin/env python3
"""
Small shared helpers: model construction, dB conversion, number formatting
"""

from typing import Any, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from app.core.config import settings
from app.core.exceptions import InvalidParameterError

ModelT = TypeVar("ModelT", bound=BaseModel)


def build_model(model_cls: Type[ModelT], **values: Any) -> ModelT:
    """Construct a pydantic model, translating validation errors."""
    try:
        return model_cls(**values)
    except ValidationError as exc:
        fields = [".".join(str(part) for part in err["loc"]) or model_cls.__name__ for err in exc.errors()]
        messages = "; ".join(err["msg"] for err in exc.errors())
        raise InvalidParameterError(
            f"invalid {model_cls.__name__}: {', '.join(fields)} ({messages})",
            {"fields": fields},
        ) from exc


def db_to_watts(value_db: float) -> float:
    """10 log10(W / 1 W) -> W"""
    return 10.0 ** (value_db / 10.0)


def format_float(value: Optional[float], digits: Optional[int] = None) -> str:
    """Format with a fixed number of significant digits."""
    if digits is None:
        digits = settings.CSV_SIGNIFICANT_DIGITS
    if value is None:
        return ""
    return format(float(value), f".{digits}g")
