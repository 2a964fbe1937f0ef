"""HTTP JSON API for registration and login, consumed by the web UI and tests.

Endpoints and field names are part of the wire contract:

    POST /api/accounts                {user_id, user_id_confirm}
    PUT  /api/accounts/{id}/password  {image_ids: [a, b]}
    PUT  /api/accounts/{id}/condition {direction, time_unit}
    POST /api/sessions                {user_id}
    POST /api/sessions/{id}/attempt   {clicks: [cell, cell]}
    GET  /api/catalog

Grids travel as 25 image ids in row-major order; clicks as row-major cell
indices; the clock as the zero-padded "HH:MM" snapshot the grid was issued
with.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .catalog import Catalog, assets_directory
from .errors import (
    ClickValidationError,
    ImageSelectionError,
    InvalidUserIdError,
    RegistrationPhaseError,
    SessionStateError,
    UnknownSessionError,
    UnknownUserError,
    UserIdMismatchError,
    UserIdOccupiedError,
)
from .scheme import ShiftCondition, ShiftDirection, TimeUnit
from .service import AttemptResult, AuthService
from .store import AccountStore, RegistrationState


class CreateAccountBody(BaseModel):
    user_id: str
    user_id_confirm: str


class PasswordBody(BaseModel):
    image_ids: list[int]


class ConditionBody(BaseModel):
    direction: str
    time_unit: str


class BeginSessionBody(BaseModel):
    user_id: str


class AttemptBody(BaseModel):
    clicks: list[int]


_ERROR_CODES = {
    UserIdMismatchError: ("mismatch", 400),
    InvalidUserIdError: ("invalid_user_id", 400),
    UserIdOccupiedError: ("occupied", 409),
    ImageSelectionError: ("selection", 400),
    RegistrationPhaseError: ("phase", 400),
    UnknownUserError: ("unknown_user", 404),
    UnknownSessionError: ("unknown_session", 404),
    SessionStateError: ("session_state", 400),
    ClickValidationError: ("invalid_clicks", 400),
}


def _error_response(exc: Exception) -> JSONResponse:
    code, status = _ERROR_CODES[type(exc)]
    return JSONResponse(status_code=status, content={"error": str(exc), "code": code})


def create_app(
    store: AccountStore,
    catalog: Catalog,
    service: AuthService,
    *,
    frontend_dir: Optional[str | Path] = None,
) -> FastAPI:
    """Wire the store, catalog, and auth service into a FastAPI application."""
    app = FastAPI(title="gridpass", docs_url=None, redoc_url=None)
    pending: dict[str, RegistrationState] = {}
    pending_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"error": "malformed request body", "code": "malformed"}
        )

    for exc_type in _ERROR_CODES:

        @app.exception_handler(exc_type)
        async def domain_error(request: Request, exc: Exception) -> JSONResponse:
            return _error_response(exc)

    @app.post("/api/accounts", status_code=201)
    def create_account(body: CreateAccountBody) -> dict:
        state = store.create_user(body.user_id, body.user_id_confirm)
        with pending_lock:
            # Restarting the wizard for the same id replaces the stale draft.
            pending[state.user_id] = state
        return {"user_id": state.user_id, "phase": state.phase.value}

    def _pending_state(user_id: str) -> RegistrationState:
        with pending_lock:
            state = pending.get(user_id)
        if state is None:
            raise UnknownUserError(f"no registration in progress for {user_id!r}")
        return state

    @app.put("/api/accounts/{user_id}/password")
    def set_password(user_id: str, body: PasswordBody) -> dict:
        state = _pending_state(user_id)
        state.set_password_images(body.image_ids)
        return {"user_id": user_id, "phase": state.phase.value}

    @app.put("/api/accounts/{user_id}/condition")
    def set_condition(user_id: str, body: ConditionBody):
        state = _pending_state(user_id)
        try:
            condition = ShiftCondition(
                direction=ShiftDirection(body.direction), unit=TimeUnit(body.time_unit)
            )
        except ValueError:
            return JSONResponse(
                status_code=400,
                content={
                    "error": f"unknown direction {body.direction!r} or time unit {body.time_unit!r}",
                    "code": "condition",
                },
            )
        state.set_shift_condition(condition)
        with pending_lock:
            pending.pop(user_id, None)
        return {"user_id": user_id, "phase": state.phase.value}

    @app.post("/api/sessions", status_code=201)
    def begin_session(body: BeginSessionBody) -> dict:
        session = service.begin_session(body.user_id)
        assert session.challenge is not None
        return {
            "session_id": session.session_id,
            "grid": list(session.challenge.cells),
            "clock": str(session.clock),
            "attempts_remaining": session.attempts_remaining,
        }

    @app.get("/api/sessions/{session_id}")
    def session_info(session_id: str) -> dict:
        return service.session_info(session_id)

    @app.post("/api/sessions/{session_id}/attempt")
    def submit_attempt(session_id: str, body: AttemptBody) -> dict:
        outcome = service.submit_attempt(session_id, body.clicks)
        if outcome.result is AttemptResult.SUCCESS:
            return {"outcome": "success"}
        if outcome.result is AttemptResult.LOCKED:
            return {"outcome": "locked"}
        assert outcome.grid is not None and outcome.clock is not None
        return {
            "outcome": "retry",
            "grid": list(outcome.grid.cells),
            "clock": str(outcome.clock),
            "attempts_remaining": outcome.attempts_remaining,
        }

    @app.get("/api/catalog")
    def get_catalog() -> list[dict]:
        return [
            {"id": image.id, "asset_path": image.asset_path, "label": image.label}
            for image in catalog.images
        ]

    app.mount("/assets", StaticFiles(directory=assets_directory()), name="assets")
    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app
