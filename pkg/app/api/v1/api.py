#!/usr/bin/env python3
"""
Main API router
"""

from fastapi import APIRouter

from app.api.v1.endpoints import bounds, channel, distributions

api_router = APIRouter()

api_router.include_router(channel.router, prefix="/channel", tags=["channel"])
api_router.include_router(bounds.router, prefix="/bounds", tags=["bounds"])
api_router.include_router(distributions.router, prefix="/distributions", tags=["distributions"])
