"""
FastAPI utilities package
Shared request handling for the simflat routes
"""

import logging

from fastapi import HTTPException

from simflat.errors import SimflatError


def http_error(e: Exception, what: str) -> HTTPException:
    """Domain errors become 422, anything else 500."""
    logging.error(f"Error {what}: {e}")
    if isinstance(e, HTTPException):
        return e
    if isinstance(e, SimflatError):
        return HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")
    return HTTPException(status_code=500, detail=f"Failed {what}: {str(e)}")


__all__ = ['http_error']
