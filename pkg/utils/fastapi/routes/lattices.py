"""
Lattice API Routes
==================

FastAPI routes for lattice/form pairs: normalization, short vectors and
simultaneous isometries.
"""

from fastapi import APIRouter
from pydantic import BaseModel
from typing import Optional
import logging

from simflat.autiso import isometry
from simflat.errors import MalformedEntry
from simflat.exact import format_entry, qq, to_strings
from simflat.lattice import (
    FormTuple,
    IntegralPair,
    Lattice,
    discriminant_group,
    normalize_pair,
    short_vectors,
)
from utils.fastapi import http_error
from utils.state import matrices_from_payload, matrix_from_payload

# Initialize router
router = APIRouter(prefix="/lattices", tags=["Lattices"])


# Pydantic models
class PairRequest(BaseModel):
    """A lattice basis (default the standard lattice) and a positive definite form"""
    lattice: Optional[list[list[str]]] = None
    form: list[list[str]]

    class Config:
        json_schema_extra = {
            "example": {
                "lattice": [["2", "0"], ["0", "2"]],
                "form": [["1", "0"], ["0", "1"]]
            }
        }

    def to_lattice(self) -> Lattice:
        if self.lattice:
            return Lattice.from_generators(matrix_from_payload(self.lattice))
        return Lattice.standard(len(self.form))


class PairResponse(BaseModel):
    det: int
    lattice: list[list[str]]
    form: list[list[str]]
    discriminant_group: list[int]

    class Config:
        json_schema_extra = {
            "example": {
                "det": 1,
                "lattice": [["1", "0"], ["0", "1"]],
                "form": [["1", "0"], ["0", "1"]],
                "discriminant_group": []
            }
        }


class ShortVectorRequest(PairRequest):
    bound: str

    class Config:
        json_schema_extra = {
            "example": {
                "form": [["2", "1"], ["1", "2"]],
                "bound": "2"
            }
        }


class IsometryRequest(BaseModel):
    """Two form tuples on the standard lattice (or given lattices), positive definite form first"""
    forms_a: list[list[list[str]]]
    forms_b: list[list[list[str]]]
    lattice_a: Optional[list[list[str]]] = None
    lattice_b: Optional[list[list[str]]] = None

    class Config:
        json_schema_extra = {
            "example": {
                "forms_a": [[["2", "1"], ["1", "2"]]],
                "forms_b": [[["2", "-1"], ["-1", "2"]]]
            }
        }


class IsometryResponse(BaseModel):
    isometric: bool
    transform: Optional[list[list[str]]] = None


@router.post("/normalize", response_model=PairResponse)
def lattice_normalize(request: PairRequest):
    """Normalized pair reached from an integral pair by partial dualization"""
    logging.info('FastAPI normalize endpoint processed a request.')
    try:
        pair = IntegralPair(request.to_lattice(), matrix_from_payload(request.form))
        q = normalize_pair(pair)
        return PairResponse(
            det=q.det,
            lattice=to_strings(q.lattice.basis),
            form=to_strings(q.form),
            discriminant_group=discriminant_group(q.lattice, q.form),
        )
    except Exception as e:
        raise http_error(e, "normalizing the pair")


@router.post("/short-vectors", response_model=dict)
def lattice_short_vectors(request: ShortVectorRequest):
    """Vectors of norm at most the bound, one per +- pair"""
    try:
        vectors = short_vectors(request.to_lattice(), matrix_from_payload(request.form), qq(request.bound))
        return {"vectors": [[format_entry(a) for a in v] for v in vectors]}
    except Exception as e:
        raise http_error(e, "enumerating short vectors")


@router.post("/isometry", response_model=IsometryResponse)
def lattice_isometry(request: IsometryRequest):
    """T with L_a T = L_b carrying every form of b onto the matching form of a"""
    try:
        a = matrices_from_payload(request.forms_a)
        b = matrices_from_payload(request.forms_b)
        if not a or not b:
            raise MalformedEntry("both form tuples need a positive definite form")
        La = Lattice.from_generators(matrix_from_payload(request.lattice_a)) if request.lattice_a else Lattice.standard(a[0].shape[0])
        Lb = Lattice.from_generators(matrix_from_payload(request.lattice_b)) if request.lattice_b else Lattice.standard(b[0].shape[0])
        T = isometry(La, FormTuple(a[0], tuple(a[1:])), Lb, FormTuple(b[0], tuple(b[1:])))
        if T is None:
            return IsometryResponse(isometric=False)
        return IsometryResponse(isometric=True, transform=to_strings(T))
    except Exception as e:
        raise http_error(e, "searching for an isometry")
