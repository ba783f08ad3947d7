"""HTTP facade over the handlers.

Errors raised by the engine surface as HTTP 400 with a structured body
(kind, message, optional parse offset) so clients can map them back onto
the same exit codes the local CLI uses.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__
from .errors import ShehuError
from .handlers import handle_invert, handle_selftest, handle_solve, handle_transform
from .schemas import (
    ErrorBody,
    InvertRequest,
    InvertResponse,
    SelftestResponse,
    SolveRequest,
    SolveResponse,
    TransformRequest,
    TransformResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="shehu", version=__version__)

    @app.exception_handler(ShehuError)
    async def _engine_error(request, exc: ShehuError) -> JSONResponse:
        body = ErrorBody(
            kind=type(exc).__name__,
            message=str(exc),
            offset=getattr(exc, "offset", None),
        )
        return JSONResponse(status_code=400, content=body.model_dump())

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/transform", response_model=TransformResponse)
    async def transform(req: TransformRequest) -> TransformResponse:
        return handle_transform(req)

    @app.post("/invert", response_model=InvertResponse)
    async def invert(req: InvertRequest) -> InvertResponse:
        return handle_invert(req)

    @app.post("/solve", response_model=SolveResponse)
    async def solve(req: SolveRequest) -> SolveResponse:
        return handle_solve(req.config)

    @app.get("/selftest", response_model=SelftestResponse)
    async def selftest() -> SelftestResponse:
        return handle_selftest()

    return app
