#!/usr/bin/env python3
"""
FastAPI application for the VLC secrecy-bounds service
"""

from contextlib import asynccontextmanager

import structlog
import uvicorn
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.api.v1.api import api_router
from app.core.config import settings
from app.core.exceptions import SecrecyBoundsError
from app.core.logging import configure_logging

logger = structlog.get_logger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager"""
    configure_logging()
    logger.info("service_starting", project=settings.PROJECT_NAME, version=settings.VERSION)
    yield
    logger.info("service_stopping")


app = FastAPI(
    title=settings.PROJECT_NAME,
    description="Secrecy-capacity bounds for VLC wiretap channels with signal-dependent noise",
    version=settings.VERSION,
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(api_router, prefix="/api/v1")


@app.get("/")
async def root():
    """Service banner"""
    return {
        "message": settings.PROJECT_NAME,
        "version": settings.VERSION,
        "status": "healthy",
    }


@app.get("/health")
async def health_check():
    """Detailed health check"""
    return {
        "status": "healthy",
        "settings": {
            "quad_rel_tol": settings.QUAD_REL_TOL,
            "solver_tol": settings.SOLVER_TOL,
            "sweep_workers": settings.SWEEP_WORKERS,
        },
    }


@app.exception_handler(SecrecyBoundsError)
async def secrecy_bounds_exception_handler(request: Request, exc: SecrecyBoundsError):
    """Errors that escape an endpoint without being mapped"""
    logger.error("request_failed", path=request.url.path, error=exc.code, detail=exc.detail)
    return JSONResponse(status_code=500, content={"detail": exc.to_dict()})


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Global exception handler"""
    logger.exception("unhandled_error", path=request.url.path)
    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal server error",
            "detail": str(exc) if settings.DEBUG else "Something went wrong",
        },
    )


if __name__ == "__main__":
    uvicorn.run("app.main:app", host=settings.HOST, port=settings.PORT, reload=settings.DEBUG)
