# app/models.py
from __future__ import annotations

from typing import Any, Optional
from sqlalchemy import JSON
from sqlmodel import SQLModel, Field
from datetime import datetime


class ReportRecord(SQLModel, table=True):
    id: Optional[int] = Field(default=None, primary_key=True)
    command: str = Field(index=True)           # spectrum | berezin | compactness | divide | examples
    expression: str = ""
    verdict: Optional[str] = Field(default=None, index=True)
    config: dict[str, Any] = Field(default_factory=dict, sa_type=JSON)
    body: str = ""                             # JSON o CSV così come emesso
    media_type: str = "application/json"
    created_at: datetime = Field(default_factory=datetime.utcnow, nullable=False)
