#!/usr/bin/env python3
"""
FastAPI application exposing the simflat library over HTTP
"""
from fastapi import FastAPI
import logging

# Import route modules
from utils.fastapi.routes.core import router as core_router
from utils.fastapi.routes.groups import router as groups_router
from utils.fastapi.routes.lattices import router as lattices_router
from utils.fastapi.routes.database import router as database_router

from simflat.config import get_settings
from utils.log import setup_logging

setup_logging(get_settings().log_level)
logging.getLogger("simflat").setLevel(get_settings().log_level)

# Initialize FastAPI app
app = FastAPI(
    title="simflat API",
    description="""
    Exact computations with finite rational symplectic matrix groups:

    **Groups**: order, invariant forms, symplecticity, automorphism and Bravais groups
    **Lattices**: normalized pairs, short vectors, simultaneous isometries
    **Database**: s.i.m.f. classes per dimension, verification and recognition

    Matrices travel as lists of rows of strings ("p/q" or integers).
    """,
    version="0.1.0",
    tags_metadata=[
        {
            "name": "Core",
            "description": "Basic application functionality including health checks and configuration.",
        },
        {
            "name": "Groups",
            "description": "Finite matrix groups given by generators.",
        },
        {
            "name": "Lattices",
            "description": "Lattice/form pairs and isometry testing.",
        },
        {
            "name": "Database",
            "description": "The classification database and the recognizer.",
        },
    ]
)

# Include all route modules
app.include_router(core_router)
app.include_router(groups_router)
app.include_router(lattices_router)
app.include_router(database_router)

if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
