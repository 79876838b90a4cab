# app/bergman/reports.py
"""Pydantic report types shared by the diagnostics, the CLI, the API and the archive."""
from __future__ import annotations

import enum
from typing import Any, Optional

from pydantic import BaseModel, Field

from .berezin import DecayProfile


class Verdict(str, enum.Enum):
    COMPACT = "compact"
    COMPACT_CONSISTENT = "compact-consistent"
    NOT_COMPACT = "not-compact"
    INCONCLUSIVE = "inconclusive"


class SliceVerdict(BaseModel):
    k: int
    xi_re: float
    xi_im: float
    norm: float
    exact_zero: bool
    certified_nonzero: bool = False
    pad: int = 0
    verdict: str = "inconclusive"
    note: str = ""


class DecayFinding(BaseModel):
    target: list[list[float]]
    estimate: Optional[float] = None
    last_reliable: Optional[float] = None
    reliable_points: int = 0
    obstruction: Optional[bool] = None  # None: troppo pochi punti affidabili
    reason: str = ""


class DecayTestResult(BaseModel):
    profiles: list[DecayProfile] = Field(default_factory=list)
    findings: list[DecayFinding] = Field(default_factory=list)
    verdict: str = "no-obstruction"

    @property
    def obstruction_found(self) -> bool:
        return any(f.obstruction for f in self.findings)


class FaceMaximum(BaseModel):
    k: int
    max_abs: float


class CriterionResult(BaseModel):
    name: str
    verdict: Verdict
    reason: str = ""
    details: dict[str, Any] = Field(default_factory=dict)


class ProbePoint(BaseModel):
    t: float
    value: float
    reliable: bool


class CompactnessReport(BaseModel):
    expr: str
    n: int
    trunc: list[int]
    pad: int
    tol_slice: float
    tol_decay: float
    slices: list[SliceVerdict] = Field(default_factory=list)
    profiles: list[DecayProfile] = Field(default_factory=list)
    findings: list[DecayFinding] = Field(default_factory=list)
    face_maxima: list[FaceMaximum] = Field(default_factory=list)
    criteria: list[CriterionResult] = Field(default_factory=list)
    verdict: Verdict = Verdict.INCONCLUSIVE
    evidence: list[str] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)
    limitations: list[str] = Field(default_factory=list)
    config: dict[str, Any] = Field(default_factory=dict)

    def min_slice_norm(self, k: int) -> float | None:
        norms = [s.norm for s in self.slices if s.k == k]
        return min(norms) if norms else None


class ClaimCheck(BaseModel):
    claim: str
    passed: bool
    detail: str = ""


class ExamplesBundle(BaseModel):
    config: dict[str, Any] = Field(default_factory=dict)
    claims: list[ClaimCheck] = Field(default_factory=list)
    spectra: dict[str, list[str]] = Field(default_factory=dict)
    reports: dict[str, CompactnessReport] = Field(default_factory=dict)
    warnings: list[str] = Field(default_factory=list)

    @property
    def failed(self) -> list[ClaimCheck]:
        return [c for c in self.claims if not c.passed]
