"""
Model Construction API Routes

Endpoints for checking models and building product, power, diagonal and
fat-wedge models.
"""

import logging
from typing import Callable

from fastapi import APIRouter, HTTPException

from ...errors import InputError, InvariantViolation
from ...secat import commands
from ...secat.commands import CommandResult
from ...secat.modelfile import parse_model
from ...secat.reports import CommandReport
from ..models import DiagonalRequest, FatWedgeRequest, ModelRequest, PowerRequest, ProductRequest

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/models", tags=["Models"])


def run_command(name: str, call: Callable[[], CommandResult]) -> CommandReport:
    """
    Run a command and map library errors to HTTP errors

    InputError -> 400, InvariantViolation -> 422.
    """
    try:
        return call().report
    except InputError as e:
        logger.info(f"{name}: rejected input: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except InvariantViolation as e:
        logger.error(f"{name}: {type(e).__name__}: {e}")
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")


@router.post(
    "/check",
    response_model=CommandReport,
    summary="Check a model",
    description="d² = 0 up to the degree bound, minimality and the stage filtration"
)
def check_model(request: ModelRequest):
    return run_command("check", lambda: commands.check_command(
        parse_model(request.model), request.max_degree, inputs={"max_degree": request.max_degree}
    ))


@router.post(
    "/homology",
    response_model=CommandReport,
    summary="Homology dimensions",
    description="dim H_k of the model for 1 <= k <= N"
)
def model_homology(request: ModelRequest):
    return run_command("homology", lambda: commands.homology_command(
        parse_model(request.model), request.max_degree, inputs={"max_degree": request.max_degree}
    ))


@router.post(
    "/product",
    response_model=CommandReport,
    summary="Product model",
    description="Model of the product of two spaces; details.model holds the model file text"
)
def product_model(request: ProductRequest):
    return run_command("product", lambda: commands.product_command(
        parse_model(request.left), parse_model(request.right), request.max_degree,
        inputs={"max_degree": request.max_degree}
    ))


@router.post(
    "/power",
    response_model=CommandReport,
    summary="Power model",
    description="Model of the n-fold product, optionally with the invariant checks"
)
def power_model(request: PowerRequest):
    return run_command("power", lambda: commands.power_command(
        parse_model(request.model), request.copies, request.max_degree, run_checks=request.check,
        inputs={"copies": request.copies, "max_degree": request.max_degree, "check": request.check}
    ))


@router.post(
    "/diagonal",
    response_model=CommandReport,
    summary="Diagonal model",
    description="Lift of the diagonal through the power model"
)
def diagonal_model(request: DiagonalRequest):
    return run_command("diagonal", lambda: commands.diagonal_command(
        parse_model(request.model), request.copies, request.max_degree,
        inputs={"copies": request.copies, "max_degree": request.max_degree}
    ))


@router.post(
    "/fatwedge",
    response_model=CommandReport,
    summary="Fat-wedge model",
    description="Kept sub-dgl of the power model for n + 1 copies; ClosureViolation answers 422"
)
def fatwedge_model(request: FatWedgeRequest):
    return run_command("fatwedge", lambda: commands.fatwedge_command(
        parse_model(request.model), request.n, request.max_degree,
        inputs={"n": request.n, "max_degree": request.max_degree}
    ))
