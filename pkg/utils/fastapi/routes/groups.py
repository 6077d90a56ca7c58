"""
Group API Routes
================

FastAPI routes for finite rational matrix groups: order, invariant forms,
symplecticity, lattice automorphism groups and generalized Bravais groups.
"""

from fastapi import APIRouter
from pydantic import BaseModel
from typing import Optional
import logging

from simflat.autiso import aut_group
from simflat.errors import MalformedEntry
from simflat.lattice import FormTuple, Lattice
from simflat.matgrp import (
    MatrixGroup,
    fixed_forms,
    is_rationally_irreducible,
    is_symplectic,
    positive_form,
)
from simflat.zorder import bravais_group
from utils.fastapi import http_error
from utils.state import matrices_compress, matrices_decompress, matrices_from_payload, matrices_to_payload, matrix_from_payload

# Initialize router
router = APIRouter(prefix="/groups", tags=["Groups"])


# Pydantic models
class GroupRequest(BaseModel):
    """A finite group by its generators, plain or compressed"""
    generators: Optional[list[list[list[str]]]] = None
    compressed: Optional[str] = None
    name: str = ""

    class Config:
        json_schema_extra = {
            "example": {
                "generators": [[["0", "1"], ["-1", "0"]]],
                "name": "C4"
            }
        }

    def to_group(self) -> MatrixGroup:
        if self.compressed is not None:
            gens = matrices_decompress(self.compressed)
        elif self.generators:
            gens = matrices_from_payload(self.generators)
        else:
            raise MalformedEntry("either generators or compressed must be given")
        return MatrixGroup(gens, gens[0].shape[0], self.name)


class GroupResponse(BaseModel):
    order: int
    generators: list[list[list[str]]]
    compressed: str

    class Config:
        json_schema_extra = {
            "example": {
                "order": 4,
                "generators": [[["0", "1"], ["-1", "0"]]],
                "compressed": "<zlib+base64 of the generators>"
            }
        }


class FormSpaceResponse(BaseModel):
    symmetric: list[list[list[str]]]
    skew: list[list[list[str]]]


class SymplecticResponse(BaseModel):
    symplectic: bool
    irreducible: bool


class AutRequest(BaseModel):
    """A lattice basis (default the standard lattice) and a tuple of forms, positive definite first"""
    lattice: Optional[list[list[str]]] = None
    forms: list[list[list[str]]]

    class Config:
        json_schema_extra = {
            "example": {
                "forms": [[["1", "0"], ["0", "1"]], [["0", "1"], ["-1", "0"]]]
            }
        }


def _group_response(G: MatrixGroup, order: int) -> GroupResponse:
    return GroupResponse(
        order=order,
        generators=matrices_to_payload(G.generators),
        compressed=matrices_compress(G.generators),
    )


@router.post("/order", response_model=dict)
def group_order(request: GroupRequest):
    """Order of a finite matrix group"""
    logging.info('FastAPI group order endpoint processed a request.')
    try:
        return {"order": request.to_group().order}
    except Exception as e:
        raise http_error(e, "computing the group order")


@router.post("/formspace", response_model=FormSpaceResponse)
def group_formspace(request: GroupRequest):
    """Bases of the invariant symmetric and skew forms"""
    try:
        space = fixed_forms(request.to_group())
        return FormSpaceResponse(
            symmetric=matrices_to_payload(space.basis_sym),
            skew=matrices_to_payload(space.basis_skew),
        )
    except Exception as e:
        raise http_error(e, "computing the form space")


@router.post("/symplectic", response_model=SymplecticResponse)
def group_symplectic(request: GroupRequest):
    """Whether the group fixes a nondegenerate skew form, and whether it is rationally irreducible"""
    try:
        G = request.to_group()
        return SymplecticResponse(symplectic=is_symplectic(G), irreducible=is_rationally_irreducible(G))
    except Exception as e:
        raise http_error(e, "testing symplecticity")


@router.post("/autgrp", response_model=GroupResponse)
def group_autgrp(request: AutRequest):
    """Automorphism group of a lattice preserving every given form"""
    try:
        forms = matrices_from_payload(request.forms)
        if not forms:
            raise MalformedEntry("at least one form is required")
        m = forms[0].shape[0]
        L = Lattice.from_generators(matrix_from_payload(request.lattice)) if request.lattice else Lattice.standard(m)
        A = aut_group(L, FormTuple(forms[0], tuple(forms[1:])))
        return _group_response(A.group(), A.order)
    except Exception as e:
        raise http_error(e, "computing the automorphism group")


@router.post("/bravais", response_model=GroupResponse)
def group_bravais(request: GroupRequest):
    """Generalized Bravais group of a finite group"""
    try:
        G = request.to_group()
        B = bravais_group(G, positive_form(G))
        return _group_response(B, B.order)
    except Exception as e:
        raise http_error(e, "computing the Bravais group")
