# app/bergman/errors.py
from __future__ import annotations


class ToeplitzError(Exception):
    pass


class TruncationError(ToeplitzError):
    pass


class BoundaryPointError(ToeplitzError):
    # punto che deve stare nel polidisco aperto
    pass


class DimensionError(ToeplitzError):
    pass


class NonPolynomialError(ToeplitzError):
    pass


class HypothesisRefusal(ToeplitzError):
    """Refusals are never verdicts: the CLI exits with code 2 and the API answers 422."""


class SymbolSyntaxError(ToeplitzError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset  # byte UTF-8, non indice di carattere


class ClaimFailedError(ToeplitzError):
    def __init__(self, claim: str, detail: str = "", bundle=None):
        super().__init__(f"claim failed: {claim}" + (f" ({detail})" if detail else ""))
        self.claim = claim
        self.detail = detail
        self.bundle = bundle
