"""FastAPI service wrapping the tutor platform core.

Every error answers with a uniform {"error": {"code", "message", "detail"}}
envelope. Session tokens travel as a bearer Authorization header; the admin
endpoint authenticates with the X-Admin-Token header.
"""

from __future__ import annotations

from datetime import date
from pathlib import Path

from fastapi import FastAPI, Header, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from ..config import AppConfig, load_config
from ..platform import ApiError, TutorPlatform
from ..storage import StorageUnavailableError
from . import schemas


def _token_from_header(authorization: str | None) -> str | None:
    if authorization and authorization.lower().startswith("bearer "):
        return authorization[7:].strip()
    return None


def create_app(
    config: AppConfig | None = None, platform: TutorPlatform | None = None
) -> FastAPI:
    config = config or load_config()
    platform = platform or TutorPlatform(config)
    app = FastAPI(title="algetutor", version="0.1.0")
    app.state.platform = platform

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        body = {"error": {"code": exc.code, "message": exc.message, "detail": exc.detail}}
        headers = {"Retry-After": "1"} if exc.status == 503 else None
        return JSONResponse(status_code=exc.status, content=body, headers=headers)

    @app.exception_handler(StorageUnavailableError)
    async def storage_error_handler(request: Request, exc: StorageUnavailableError):
        body = {"error": {"code": "storage_unavailable", "message": str(exc), "detail": {}}}
        return JSONResponse(status_code=503, content=body, headers={"Retry-After": "1"})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        body = {
            "error": {
                "code": "bad_request",
                "message": "request body failed validation",
                "detail": {"errors": exc.errors()},
            }
        }
        return JSONResponse(status_code=400, content=body)

    @app.post("/api/sessions", response_model=schemas.SessionResponse, status_code=201)
    def create_session(body: schemas.SessionRequest):
        return platform.create_session(body.student_id, body.consent)

    @app.get("/api/tutors", response_model=list[schemas.TutorView])
    def tutors(authorization: str | None = Header(default=None)):
        return platform.get_catalog(_token_from_header(authorization))

    @app.post("/api/tutors/{tutor_id}/problems", response_model=schemas.ProblemResponse)
    def next_problem(
        tutor_id: str,
        body: schemas.ProblemRequest,
        authorization: str | None = Header(default=None),
    ):
        return platform.request_problem(
            _token_from_header(authorization), tutor_id, body.mode, body.problem_type
        )

    @app.post(
        "/api/problems/{problem_id}/steps/{slot}/attempts",
        response_model=schemas.AttemptResponse,
    )
    def attempt(
        problem_id: str,
        slot: str,
        body: schemas.AttemptRequest,
        authorization: str | None = Header(default=None),
    ):
        return platform.submit_attempt(
            _token_from_header(authorization), problem_id, slot, body.input
        )

    @app.post(
        "/api/problems/{problem_id}/steps/{slot}/hints", response_model=schemas.HintResponse
    )
    def hint(
        problem_id: str,
        slot: str,
        authorization: str | None = Header(default=None),
    ):
        return platform.request_hint(_token_from_header(authorization), problem_id, slot)

    @app.post("/api/problems/{problem_id}/done", response_model=schemas.DoneResponse)
    def done(problem_id: str, authorization: str | None = Header(default=None)):
        return platform.submit_done(_token_from_header(authorization), problem_id)

    @app.get("/api/profile/mastery", response_model=schemas.MasteryResponse)
    def mastery(authorization: str | None = Header(default=None)):
        return platform.mastery_profile(_token_from_header(authorization))

    @app.get("/api/admin/funnel", response_model=schemas.FunnelResponse)
    def admin_funnel(
        start: date = Query(alias="from"),
        end: date = Query(alias="to"),
        roster: int = Query(ge=0),
        x_admin_token: str | None = Header(default=None),
    ):
        report = platform.admin_funnel(x_admin_token, start, end, roster)
        return report.to_json_dict()

    _mount_frontend(app)
    return app


def _mount_frontend(app: FastAPI) -> None:
    """Serve the browser client at /app when its build output is present."""
    frontend = Path(__file__).resolve().parents[3] / "frontend"
    if (frontend / "dist").is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=frontend, html=True), name="frontend")


def create_default_app() -> FastAPI:
    return create_app()
