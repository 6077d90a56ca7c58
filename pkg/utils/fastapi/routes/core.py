"""
Core API Routes
===============

FastAPI routes for basic application functionality (root, health, config).
"""

from fastapi import APIRouter
import logging

from simflat.config import get_settings

# Initialize router
router = APIRouter(tags=["Core"])


@router.get("/")
async def root():
    """Root endpoint - service summary"""
    return {
        "message": "Welcome to the simflat API",
        "version": "0.1.0",
        "features": [
            "Group orders, form spaces and symplecticity",
            "Lattice automorphism groups and isometries",
            "Normalized lattice/form pairs",
            "Generalized Bravais groups",
            "s.i.m.f. database listing, verification and recognition",
        ],
        "docs": "/docs",
        "redoc": "/redoc",
    }


@router.get("/config")
async def get_config():
    """Effective runtime settings"""
    logging.info('FastAPI config endpoint processed a request.')
    return get_settings().as_dict()


@router.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "message": "simflat API is running"}
