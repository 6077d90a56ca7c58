"""
Database API Routes
===================

FastAPI routes for the packaged s.i.m.f. classification database: listing,
verification and recognition of a group's conjugacy class.
"""

from fastapi import APIRouter
from pydantic import BaseModel
import logging

from simflat.exact import to_strings
from simflat.simfdb import db_list, db_verify_all, default_db, recognize
from utils.fastapi import http_error
from utils.fastapi.routes.groups import GroupRequest

# Initialize router
router = APIRouter(prefix="/database", tags=["Database"])


# Pydantic models
class DbEntryModel(BaseModel):
    """One conjugacy class of the database"""
    dim: int
    order: int
    name: str
    primitive: bool

    class Config:
        json_schema_extra = {
            "example": {"dim": 4, "order": 48, "name": "GL23", "primitive": True}
        }


class VerifyModel(BaseModel):
    name: str
    passed: bool
    order_claimed: int
    order_found: int | None
    checks: dict[str, bool]
    skipped: list[str]


class RecognitionModel(BaseModel):
    name: str
    conjugator: list[list[str]]

    class Config:
        json_schema_extra = {
            "example": {"name": "C10", "conjugator": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                                                      ["0", "0", "1", "0"], ["0", "0", "0", "1"]]}
        }


@router.get("/{dim}", response_model=list[DbEntryModel])
def database_list(dim: int):
    """Entries shipped for one dimension"""
    logging.info(f'FastAPI database list endpoint processed a request for dim {dim}.')
    try:
        return [DbEntryModel(**row.__dict__) for row in db_list(default_db(dim))]
    except Exception as e:
        raise http_error(e, f"listing dimension {dim}")


@router.get("/{dim}/verify", response_model=list[VerifyModel])
def database_verify(dim: int):
    """Recompute and check every entry of one dimension"""
    try:
        return [
            VerifyModel(
                name=r.name,
                passed=r.passed,
                order_claimed=r.order_claimed,
                order_found=r.order_found,
                checks=r.checks,
                skipped=r.skipped,
            )
            for r in db_verify_all(default_db(dim))
        ]
    except Exception as e:
        raise http_error(e, f"verifying dimension {dim}")


@router.post("/recognize", response_model=RecognitionModel)
def database_recognize(request: GroupRequest):
    """Database class of a symplectic irreducible group and the conjugating matrix"""
    try:
        result = recognize(request.to_group())
        return RecognitionModel(name=result.name, conjugator=to_strings(result.conjugator))
    except Exception as e:
        raise http_error(e, "recognizing the group")
