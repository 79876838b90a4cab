# app/views_reports.py
from __future__ import annotations

import json
from typing import Annotated, Optional

from fastapi import APIRouter, Depends, HTTPException, Request
from fastapi.responses import HTMLResponse, PlainTextResponse
from fastapi.templating import Jinja2Templates
from sqlmodel import Session

from .db import get_session_dep, list_reports
from .models import ReportRecord
from .paths import TEMPLATES_DIR

SessionDep = Annotated[Session, Depends(get_session_dep)]

router = APIRouter()
templates = Jinja2Templates(directory=str(TEMPLATES_DIR))


@router.get("/reports", response_class=HTMLResponse)
def reports_page(request: Request, session: SessionDep, command: Optional[str] = None):
    rows = list_reports(session, command, limit=200)
    return templates.TemplateResponse(
        "index.html", {"request": request, "reports": rows, "command": command or ""}
    )


@router.get("/reports/{report_id}", response_class=HTMLResponse)
def report_page(report_id: int, request: Request, session: SessionDep):
    rec = session.get(ReportRecord, report_id)
    if not rec:
        raise HTTPException(status_code=404, detail="report non trovato")
    parsed = None
    if rec.media_type == "application/json":
        # solo per la vista: verdetto, slice e criteri in tabella
        try:
            parsed = json.loads(rec.body)
        except ValueError:
            parsed = None
    return templates.TemplateResponse(
        "report.html", {"request": request, "rec": rec, "parsed": parsed}
    )


@router.get("/reports/{report_id}/download", response_class=PlainTextResponse)
def report_download(report_id: int, session: SessionDep):
    rec = session.get(ReportRecord, report_id)
    if not rec:
        raise HTTPException(status_code=404, detail="report non trovato")
    ext = "csv" if rec.media_type == "text/csv" else "json"
    return PlainTextResponse(
        rec.body,
        media_type=rec.media_type,
        headers={"Content-Disposition": f'attachment; filename="{rec.command}_{rec.id}.{ext}"'},
    )
