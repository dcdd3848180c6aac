"""
Certificate API Routes

Endpoints for sectional category, LS category and topological complexity
upper bounds. The response status is 'certificate' or 'no_certificate';
details.statement says what is (and is not) claimed.
"""

import logging

from fastapi import APIRouter

from ...config import settings
from ...secat import commands
from ...secat.modelfile import parse_model
from ...secat.reports import CommandReport
from ..models import CertifyRequest, SecatRequest
from .models import run_command

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/certify", tags=["Certificates"])


def _inputs(request: CertifyRequest) -> dict:
    options = request.options or settings.search_options()
    return {"max_degree": request.max_degree, "max_n": request.max_n, "options": options.model_dump()}


@router.post(
    "/secat",
    response_model=CommandReport,
    summary="Sectional category of a map model",
    description="Model file generators marked 'domain' form V; the rest form W"
)
def certify_secat(request: SecatRequest):
    inputs = {**_inputs(request), "n": request.n}
    return run_command("secat", lambda: commands.secat_command(
        parse_model(request.model), request.n, request.max_n, request.max_degree,
        request.options, inputs=inputs
    ))


@router.post(
    "/cat",
    response_model=CommandReport,
    summary="LS category upper bound",
    description="Certificate search for the base-point inclusion of a minimal model"
)
def certify_cat(request: CertifyRequest):
    return run_command("cat", lambda: commands.cat_command(
        parse_model(request.model), request.max_n, request.max_degree, request.options,
        inputs=_inputs(request)
    ))


@router.post(
    "/tc",
    response_model=CommandReport,
    summary="Topological complexity upper bound",
    description="Diagonal model, cofibration replacement, then the certificate search"
)
def certify_tc(request: CertifyRequest):
    return run_command("tc", lambda: commands.tc_command(
        parse_model(request.model), request.max_n, request.max_degree, request.options,
        inputs=_inputs(request)
    ))
