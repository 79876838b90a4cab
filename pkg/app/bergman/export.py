# app/bergman/export.py
"""Deterministic CSV / JSON text for vectors, matrices, profiles, spectra and reports."""
from __future__ import annotations

import csv
import json
from fractions import Fraction
from io import StringIO
from typing import Iterable, Sequence

import numpy as np
from pydantic import BaseModel

from .basis import CoefVector, Truncation
from .berezin import DecayProfile
from .toeplitz import OperatorMatrix


def format_float(x: float) -> str:
    """Shortest round-trip representation (at most 17 significant digits)."""
    return repr(float(x))


def _writer(out: StringIO):
    return csv.writer(out, lineterminator="\n")


def coef_vector_csv(v: CoefVector) -> str:
    out = StringIO()
    w = _writer(out)
    w.writerow(["index"] + [f"m{j}" for j in range(1, v.trunc.n + 1)] + ["re", "im"])
    for i, c in enumerate(v.coeffs):
        w.writerow([i, *v.trunc.delinearize(i), format_float(c.real), format_float(c.imag)])
    return out.getvalue()


def matrix_csv(A: OperatorMatrix | np.ndarray, exact_entries: dict | None = None, trunc: Truncation | None = None) -> str:
    """row,col,re,im for every nonzero entry; exact entries (if given) decide which ones are nonzero."""
    out = StringIO()
    w = _writer(out)
    w.writerow(["row", "col", "re", "im"])
    M = A.entries if isinstance(A, OperatorMatrix) else np.asarray(A)
    if exact_entries is not None:
        trunc = trunc or A.trunc
        cells = sorted((trunc.linearize(l), trunc.linearize(m)) for (l, m) in exact_entries)
    else:
        rows, cols = np.nonzero(np.abs(M) > 1e-300)
        cells = list(zip(rows.tolist(), cols.tolist()))
    for r, c in cells:
        w.writerow([r, c, format_float(M[r, c].real), format_float(M[r, c].imag)])
    return out.getvalue()


def decay_csv(profile: DecayProfile) -> str:
    out = StringIO()
    w = _writer(out)
    n = len(profile.target)
    head = ["t"] + [x for j in range(1, n + 1) for x in (f"p{j}_re", f"p{j}_im")]
    w.writerow(head + ["abs_bt", "kernel_mass_defect", "reliable"])
    for pt in profile.points:
        coords = [format_float(x) for pair in pt.p for x in pair]
        w.writerow(
            [format_float(pt.t), *coords, format_float(pt.abs_bt), format_float(pt.kernel_mass_defect),
             "true" if pt.reliable else "false"]
        )
    return out.getvalue()


def spectrum_csv(values: Sequence[Fraction], floats: Sequence[float] | None = None) -> str:
    out = StringIO()
    w = _writer(out)
    w.writerow(["m", "numerator", "denominator", "value"])
    for m, v in enumerate(values):
        v = Fraction(v)
        x = float(v) if floats is None else float(floats[m])
        w.writerow([m, v.numerator, v.denominator, format_float(x)])
    return out.getvalue()


def berezin_csv(rows: Iterable[tuple[Sequence[complex], complex, float]]) -> str:
    out = StringIO()
    w = _writer(out)
    header_done = False
    for coords, value, defect in rows:
        if not header_done:
            n = len(coords)
            w.writerow([x for j in range(1, n + 1) for x in (f"p{j}_re", f"p{j}_im")] + ["re", "im", "kernel_mass_defect"])
            header_done = True
        w.writerow(
            [format_float(x) for c in coords for x in (c.real, c.imag)]
            + [format_float(value.real), format_float(value.imag), format_float(defect)]
        )
    return out.getvalue()


def to_json(obj) -> str:
    """Sorted keys, fixed indentation: identical inputs give identical bytes."""
    if isinstance(obj, BaseModel):
        obj = obj.model_dump(mode="json")
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
