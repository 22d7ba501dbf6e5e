#!/usr/bin/env python3
"""
Configuration settings for the VLC secrecy-bounds toolkit
"""

from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    """Application settings"""

    # Service Configuration
    PROJECT_NAME: str = "VLC Secrecy Bounds"
    VERSION: str = "1.0.0"
    HOST: str = "0.0.0.0"
    PORT: int = 8000
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    # Quadrature
    QUAD_REL_TOL: float = 1e-9
    QUAD_ABS_TOL: float = 1e-12
    QUAD_MAX_SUBDIVISIONS: int = 200
    Y_TRUNCATION_SIGMAS: float = 12.0

    # Maxentropic solver
    ALPHA_SEAM_TOL: float = 1e-9
    SOLVER_TOL: float = 1e-12

    # Sweeps and Monte Carlo
    SWEEP_WORKERS: int = 1
    MC_WORKERS: int = 1
    DEFAULT_SEED: int = 20220901

    # Output
    CSV_SIGNIFICANT_DIGITS: int = 12

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")


# Create settings instance
settings = Settings()
