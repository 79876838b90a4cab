# app/routes_api.py
from __future__ import annotations

from typing import Annotated, Optional

from fastapi import APIRouter, Depends, HTTPException, Query
from fastapi.responses import Response
from pydantic import BaseModel, Field
from sqlmodel import Session

from .bergman.errors import ClaimFailedError, HypothesisRefusal, SymbolSyntaxError, ToeplitzError
from .commands import (
    CommandOutput,
    cmd_berezin,
    cmd_compactness,
    cmd_divide,
    cmd_examples,
    cmd_spectrum,
    error_payload,
    examples_failure_output,
)
from .config import CONFIG, RunConfig
from .db import get_session_dep, list_reports, save_report
from .models import ReportRecord

router = APIRouter(prefix="/api", tags=["bergman"])

SessionDep = Annotated[Session, Depends(get_session_dep)]


class RunOverrides(BaseModel):
    """Campi facoltativi: quelli assenti restano quelli di config.json."""
    n: Optional[int] = Field(default=None, ge=1)
    caps: Optional[list[int]] = None
    pad: Optional[int] = Field(default=None, ge=0)
    xi_count: Optional[int] = Field(default=None, ge=1)
    qr: Optional[int] = Field(default=None, ge=1)
    tol_slice: Optional[float] = None
    tol_decay: Optional[float] = None
    schedule: Optional[list[float]] = None
    seed: Optional[int] = None
    exact: Optional[bool] = None
    archive: bool = False

    def run_config(self) -> RunConfig:
        data = self.model_dump(exclude={"archive"})
        return CONFIG.run.with_overrides(**data)


class SymbolRequest(RunOverrides):
    text: str


class BerezinRequest(RunOverrides):
    text: str
    grid: str = "0,0.5,0.9:4"


def _fail(exc: ToeplitzError):
    # rifiuto → 422, sintassi → 400 con offset
    payload = error_payload(exc)
    if isinstance(exc, SymbolSyntaxError):
        raise HTTPException(status_code=400, detail=payload)
    if isinstance(exc, HypothesisRefusal):
        raise HTTPException(status_code=422, detail=payload)
    raise HTTPException(status_code=400, detail=payload)


def _respond(result: CommandOutput, session: Session, archive: bool, status_code: int = 200) -> Response:
    headers = {"Cache-Control": "no-store, max-age=0"}
    if archive:
        rec = save_report(session, result.command, result.expression, result.body,
                          result.verdict, result.config, result.media_type)
        headers["X-Report-Id"] = str(rec.id)
    return Response(result.body, status_code=status_code, media_type=result.media_type, headers=headers)


@router.post("/spectrum")
def api_spectrum(req: SymbolRequest, session: SessionDep):
    try:
        result = cmd_spectrum(req.run_config(), req.text)
    except ToeplitzError as exc:
        _fail(exc)
    return _respond(result, session, req.archive)


@router.post("/berezin")
def api_berezin(req: BerezinRequest, session: SessionDep):
    try:
        result = cmd_berezin(req.run_config(), req.text, req.grid)
    except ToeplitzError as exc:
        _fail(exc)
    return _respond(result, session, req.archive)


@router.post("/compactness")
def api_compactness(req: SymbolRequest, session: SessionDep):
    try:
        result = cmd_compactness(req.run_config(), req.text)
    except ToeplitzError as exc:
        _fail(exc)
    return _respond(result, session, req.archive)


@router.post("/divide")
def api_divide(req: SymbolRequest, session: SessionDep):
    try:
        result = cmd_divide(req.text)
    except ToeplitzError as exc:
        _fail(exc)
    return _respond(result, session, req.archive)


@router.post("/examples")
def api_examples(req: RunOverrides, session: SessionDep):
    config = req.run_config()
    try:
        result = cmd_examples(config, CONFIG.examples)
    except ClaimFailedError as exc:
        # il bundle viene restituito lo stesso, con 500
        return _respond(examples_failure_output(exc, config), session, req.archive, status_code=500)
    except ToeplitzError as exc:
        _fail(exc)
    return _respond(result, session, req.archive)


@router.get("/reports")
def api_reports(session: SessionDep, command: Optional[str] = None, limit: int = Query(50, ge=1, le=500)):
    return [
        {"id": r.id, "command": r.command, "expression": r.expression, "verdict": r.verdict,
         "media_type": r.media_type, "created_at": r.created_at.isoformat()}
        for r in list_reports(session, command, limit)
    ]


@router.get("/reports/{report_id}")
def api_report(report_id: int, session: SessionDep):
    rec = session.get(ReportRecord, report_id)
    if not rec:
        raise HTTPException(status_code=404, detail="report non trovato")
    return Response(rec.body, media_type=rec.media_type)
