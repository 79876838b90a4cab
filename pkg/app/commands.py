# app/commands.py
"""Comandi condivisi da CLI e API: ognuno restituisce un CommandOutput già serializzato."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

import numpy as np

from .bergman.basis import Point, Truncation, kernel_mass_defect
from .bergman.berezin import berezin_operator, berezin_symbol_checked
from .bergman.diagnostics import exact_spectrum, reproduce_examples, run_compactness
from .bergman.errors import ClaimFailedError, DimensionError, SymbolSyntaxError, ToeplitzError
from .bergman.export import berezin_csv, spectrum_csv, to_json
from .bergman.parser import infer_dimension, parse_operator, parse_symbol
from .bergman.polynomial import divide_by_one_minus_mod2, serialize_poly, symbol_to_poly
from .bergman.toeplitz import assemble, compose_operator
from .config import ExamplesConfig, RunConfig

log = logging.getLogger("bergman.commands")

CSV = "text/csv"
JSON = "application/json"


@dataclass
class CommandOutput:
    command: str
    expression: str
    body: str
    media_type: str
    verdict: Optional[str] = None
    config: dict = field(default_factory=dict)


# ---------- spectrum ----------
def cmd_spectrum(config: RunConfig, text: str) -> CommandOutput:
    symbol = parse_symbol(text, 1)
    count = config.caps[0]
    values = exact_spectrum(symbol, count)
    floats = None
    if not config.exact:
        # colonna value dal percorso in quadratura
        A = assemble(symbol, Truncation((count,)), mode="quadrature", qr=config.qr)
        floats = np.diag(A.entries).real
    body = spectrum_csv(values, floats)
    return CommandOutput("spectrum", text, body, CSV, config=config.echo())


# ---------- berezin ----------
def parse_grid(grid: str) -> tuple[list[float], int]:
    """'0,0.5,0.9:4' → raggi e numero di angoli per variabile."""
    radii_txt, _, angles_txt = grid.partition(":")
    try:
        radii = [float(r) for r in radii_txt.split(",") if r.strip()]
        angles = int(angles_txt) if angles_txt.strip() else 1
    except ValueError as exc:
        raise ToeplitzError(f"grid {grid!r} is not 'r1,r2,...:angles'") from exc
    if not radii or angles < 1 or any(not 0 <= r < 1 for r in radii):
        raise ToeplitzError("grid radii must lie in [0, 1) and angles must be >= 1")
    return radii, angles


def grid_points(n: int, grid: str) -> list[Point]:
    radii, angles = parse_grid(grid)
    one = []
    for r in radii:
        if r == 0:
            one.append(0j)
            continue
        one.extend(r * complex(math.cos(2 * math.pi * a / angles), math.sin(2 * math.pi * a / angles)) for a in range(angles))
    return [Point(coords) for coords in product(one, repeat=n)]


def ambient_dimension(config: RunConfig, text: str) -> int:
    """--n fissa la dimensione; senza, la più alta coordinata usata nel testo."""
    used = infer_dimension(text)
    if config.n is None:
        return used
    if used > config.n:
        raise DimensionError(f"expression uses z{used} but n is {config.n}")
    return config.n


def cmd_berezin(config: RunConfig, text: str, grid: str = "0,0.5,0.9:4") -> CommandOutput:
    n = ambient_dimension(config, text)
    config = config.with_overrides(n=n)
    rows = []
    if "T(" in text:
        expr = parse_operator(text, n)
        trunc = Truncation(config.caps_for(n))
        mode = "exact" if config.exact else "quadrature"
        A = compose_operator(expr, trunc, config.pad, mode=mode, qr=config.qr)
        for p in grid_points(n, grid):
            rows.append((p.coords, berezin_operator(A, p), kernel_mass_defect(p, trunc)))
    else:
        symbol = parse_symbol(text, n)
        for p in grid_points(n, grid):
            value, defect = berezin_symbol_checked(symbol, p)
            rows.append((p.coords, value, defect))
    return CommandOutput("berezin", text, berezin_csv(rows), CSV, config=config.echo())


# ---------- compactness ----------
def cmd_compactness(config: RunConfig, text: str) -> CommandOutput:
    config = config.with_overrides(n=ambient_dimension(config, text))
    expr = parse_operator(text, config.n)
    report = run_compactness(expr, config)
    return CommandOutput("compactness", text, to_json(report), JSON, report.verdict.value, config.echo())


# ---------- divide ----------
def cmd_divide(text: str) -> CommandOutput:
    poly = symbol_to_poly(parse_symbol(text, 1))
    quotient = divide_by_one_minus_mod2(poly)
    payload = {"divisible": quotient is not None}
    if quotient is not None:
        payload["quotient"] = serialize_poly(quotient)
    return CommandOutput("divide", text, to_json(payload), JSON, "divisible" if quotient is not None else "not-divisible")


# ---------- examples ----------
def cmd_examples(config: RunConfig, examples: ExamplesConfig) -> CommandOutput:
    """Solleva ClaimFailedError (con il bundle in .bundle) se una verifica fallisce."""
    bundle = reproduce_examples(
        config,
        phi_text=examples.phi,
        psi_text=examples.psi,
        caps_list=tuple(examples.caps),
        decay_caps=examples.decay_caps,
        spectrum_terms=examples.spectrum_terms,
        strict=True,
    )
    return CommandOutput("examples", "examples", to_json(bundle), JSON, "passed", config.echo())


def examples_failure_output(exc: ClaimFailedError, config: RunConfig) -> CommandOutput:
    body = to_json(exc.bundle) if exc.bundle is not None else to_json({"failed": exc.claim, "detail": exc.detail})
    return CommandOutput("examples", "examples", body, JSON, "failed", config.echo())


def error_payload(exc: ToeplitzError) -> dict:
    out = {"error": type(exc).__name__, "detail": str(exc)}
    if isinstance(exc, SymbolSyntaxError):
        out["offset"] = exc.offset
    return out
