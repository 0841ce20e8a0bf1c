"""FastAPI application exposing the engine operations over HTTP.

Status mapping: malformed input 400, resource budget exceeded 413, violated
mathematical precondition 422.  An unliftable class is a 200 with
``success: false`` — it is a result, not an error.
"""

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..config import DEFAULT_CONFIG, RunConfig
from ..errors import TwistedSchurError
from . import handlers
from .schemas import (CohomologyRequest, CohomologyResponse,
                      HeisenbergResponse, LiftRequest, LiftResponse,
                      MultiplierRequest, MultiplierResponse,
                      RegularRepRequest, RepFileResponse, RepGroupsRequest,
                      RepGroupsResponse)

def _error_response(status: int, kind: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"error": {"type": kind, "message": message}})


def create_app(cfg: Optional[RunConfig] = None) -> FastAPI:
    cfg = cfg or DEFAULT_CONFIG
    app = FastAPI(title="twisted-schur", version="1.0.0",
                  description="Exact twisted Schur multipliers, "
                              "representation groups, semi-projective lifts "
                              "and semilinear geometry.")

    @app.exception_handler(TwistedSchurError)
    async def _engine_error(request: Request,
                            exc: TwistedSchurError) -> JSONResponse:
        return _error_response(exc.http_status, type(exc).__name__, str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request,
                                exc: RequestValidationError) -> JSONResponse:
        return _error_response(400, "InputError", str(exc.errors()))

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/v1/multiplier", response_model=MultiplierResponse,
              response_model_exclude_none=True)
    async def multiplier(req: MultiplierRequest):
        return handlers.handle_multiplier(req.payload(), cfg)

    @app.post("/v1/repgroups", response_model=RepGroupsResponse,
              response_model_exclude_none=True)
    async def repgroups(req: RepGroupsRequest):
        return handlers.handle_repgroups(req.payload(), cfg)

    @app.post("/v1/cohomology", response_model=CohomologyResponse,
              response_model_exclude_none=True)
    async def cohomology(req: CohomologyRequest):
        return handlers.handle_cohomology(req.payload(), cfg)

    @app.post("/v1/regular-rep", response_model=RepFileResponse,
              response_model_exclude_none=True)
    async def regular_rep(req: RegularRepRequest):
        return handlers.handle_regular_rep(req.payload(), cfg)

    @app.post("/v1/lift", response_model=LiftResponse,
              response_model_exclude_none=True)
    async def lift(req: LiftRequest):
        return handlers.handle_lift(req.payload(), cfg)

    @app.get("/v1/heisenberg", response_model=HeisenbergResponse,
             response_model_exclude_none=True)
    async def heisenberg():
        return handlers.handle_heisenberg(None, cfg)

    return app
