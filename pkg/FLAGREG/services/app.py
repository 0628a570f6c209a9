"""FastAPI app."""
import json
import os
import yaml
from typing import Any

from fastapi import Body, FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.openapi.utils import get_openapi
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from FLAGREG.services.config import config
from FLAGREG.services.models import (
    AnalysisReport, AnalyzeRequest, BoundReportModel, BoundValueResponse, GenerateResponse,
    JsBoundsResponse, Lemma3Request
)
from FLAGREG.services.util.bounds import aci_bound, dhs_bound, js_lower_bounds, lemma3_check
from FLAGREG.services.util.catalog import generate_expression, parse_facets
from FLAGREG.services.util.complex import SimplicialComplex
from FLAGREG.services.util.errors import FlagregError, ParseError, TheoremViolation
from FLAGREG.services.util.logutil import LoggingUtil
from FLAGREG.services.util.report import AnalysisOptions, analyze, bound_json, jsonable

TITLE = config.get('FLAGREG_TITLE', 'FLAGREG API')
VERSION = os.environ.get('FLAGREG_VERSION', config.get('FLAGREG_VERSION', '1.0.0'))

logger = LoggingUtil.init_logging(
    __name__,
    config.get('logging_level'),
    config.get('logging_format'),
)

APP = FastAPI()


@APP.exception_handler(FlagregError)
async def flagreg_error_handler(request: Request, exc: FlagregError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@APP.exception_handler(TheoremViolation)
async def theorem_violation_handler(request: Request, exc: TheoremViolation):
    logger.error(f"{request.url.path}: {exc}")
    return JSONResponse(status_code=500, content={"detail": str(exc)})


def get_example(operation: str):
    """Get example for operation."""
    with open(os.path.join(
        os.path.dirname(__file__),
        "..",
        "examples",
        f"{operation}.json",
    )) as stream:
        return json.load(stream)


def complex_from_request(request: AnalyzeRequest) -> SimplicialComplex:
    if (request.facets is None) == (request.generator is None):
        raise ParseError("give exactly one of 'facets' or 'generator'")
    if request.facets is not None:
        return parse_facets(request.facets)
    return generate_expression(request.generator)


async def analyze_complex(
        request: AnalyzeRequest = Body(
            ...,
            example=get_example("analyze"),
        ),
) -> AnalysisReport:
    """Handle POST /analyze."""
    delta = complex_from_request(request)
    options = AnalysisOptions.from_strings(request.fields, request.checks, request.hochster_limit)
    return await run_in_threadpool(analyze, delta, options)


APP.add_api_route(
    "/analyze",
    analyze_complex,
    methods=["POST"],
    response_model=AnalysisReport,
    response_model_exclude_unset=True,
    summary="Analyse a simplicial complex",
    description=(
        "Given a facet file or a generator expression, returns the f- and "
        "h-vectors, structural verdicts, Betti tables, regularity and bound "
        "reports for the requested checks and fields."
    ),
    tags=["analysis"]
)


async def generate(
        expr: str = Query(..., example="cone(cycle(5))"),
) -> GenerateResponse:
    """Handle GET /generate."""
    delta = generate_expression(expr)
    return GenerateResponse(
        n=delta.n,
        labels=list(delta.labels),
        facets=[[delta.labels[v] for v in facet] for facet in delta.facets],
    )


APP.add_api_route(
    "/generate",
    generate,
    methods=["GET"],
    response_model=GenerateResponse,
    summary="Build a catalog complex",
    description="Evaluates a generator expression such as `icosahedron` or `join(cycle(4),cycle(5))`.",
    tags=["catalog"]
)


async def lemma3(
        request: Lemma3Request = Body(..., example={"k": 5}),
) -> BoundReportModel:
    """Handle POST /bounds/lemma3."""
    return bound_json(lemma3_check(request.k))


APP.add_api_route(
    "/bounds/lemma3",
    lemma3,
    methods=["POST"],
    response_model=BoundReportModel,
    summary="Check the product inequality for k",
    description="Compares ∏_{i=0}^{k-3} (k-i)^{2^i} with 12^{2^{k-3}} in exact integers.",
    tags=["bounds"]
)


async def js_bounds(d: int = Query(..., ge=2)) -> JsBoundsResponse:
    """Handle GET /bounds/js."""
    bounds = js_lower_bounds(d)
    return JsBoundsResponse(d=d, **{key: jsonable(value) for key, value in bounds._asdict().items()})


APP.add_api_route(
    "/bounds/js",
    js_bounds,
    methods=["GET"],
    response_model=JsBoundsResponse,
    summary="Lower bounds on top faces",
    description="Recursion value, closed form and simplified form of the top face lower bound in dimension d.",
    tags=["bounds"]
)


async def dhs(n: int = Query(..., ge=1), p: int = Query(..., ge=2)) -> BoundValueResponse:
    """Handle GET /bounds/dhs."""
    return BoundValueResponse(n=n, p=p, bound=dhs_bound(n, p))


APP.add_api_route(
    "/bounds/dhs",
    dhs,
    methods=["GET"],
    response_model=BoundValueResponse,
    summary="Logarithmic regularity bound under N_p",
    description="log_{(p+3)/2}(2n/p) + 2.",
    tags=["bounds"]
)


async def aci(n: int = Query(..., ge=1), p: int = Query(..., ge=1)) -> BoundValueResponse:
    """Handle GET /bounds/aci."""
    return BoundValueResponse(n=n, p=p, bound=aci_bound(n, p))


APP.add_api_route(
    "/bounds/aci",
    aci,
    methods=["GET"],
    response_model=BoundValueResponse,
    summary="Linear regularity bound under N_p",
    description="2⌊n/(p+1)⌋ + 1.",
    tags=["bounds"]
)


async def about() -> Any:
    """Handle /about."""
    with open(config.get_resource_path('../about.json')) as f:
        return json.load(f)


APP.add_api_route(
    "/about",
    about,
    methods=["GET"],
    response_model=Any,
    summary="JSON about this service",
    description="Returns a JSON describing the service.",
)


def construct_open_api_schema():

    if APP.openapi_schema:
        return APP.openapi_schema
    open_api_schema = get_openapi(
        title=TITLE,
        version=VERSION,
        description='',
        routes=APP.routes
    )

    open_api_extended_file_path = config.get_resource_path('../openapi-config.yaml')
    with open(open_api_extended_file_path) as open_api_file:
        open_api_extended_spec = yaml.load(open_api_file, Loader=yaml.SafeLoader)

    contact_config = open_api_extended_spec.get("contact")
    servers_conf = open_api_extended_spec.get("servers")
    tags = open_api_extended_spec.get("tags")
    title_override = open_api_extended_spec.get("title") or TITLE
    description = open_api_extended_spec.get("description")

    if tags:
        open_api_schema['tags'] = tags

    if contact_config:
        open_api_schema["info"]["contact"] = contact_config

    if description:
        open_api_schema["info"]["description"] = description

    if title_override:
        open_api_schema["info"]["title"] = title_override

    if servers_conf:
        open_api_schema["servers"] = servers_conf

    return open_api_schema


APP.openapi_schema = construct_open_api_schema()

# CORS
APP.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)
