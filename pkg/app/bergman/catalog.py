# app/bergman/catalog.py
"""Named symbols and operators of the worked examples."""
from __future__ import annotations

from ..config import PHI_TEXT, PSI_TEXT
from .parser import parse_operator, parse_symbol
from .symbols import SymbolExpr, extend
from .toeplitz import OperatorExpr


def phi(text: str = PHI_TEXT) -> SymbolExpr:
    return parse_symbol(text, 1)


def psi(text: str = PSI_TEXT) -> SymbolExpr:
    return parse_symbol(text, 1)


def in_slot(s: SymbolExpr, n: int, j: int) -> SymbolExpr:
    if s.n != 1:
        raise ValueError("only one-variable symbols are placed in a slot")
    out = s
    for k in range(1, n + 1):
        if k != j:
            out = extend(out, k)
    return out


def fg_identically_zero(phi_s: SymbolExpr | None = None, psi_s: SymbolExpr | None = None) -> OperatorExpr:
    """T_f T_g with f = phi(w), g = psi(w): fg = 0 everywhere, the product is not compact."""
    phi_s, psi_s = phi_s or phi(), psi_s or psi()
    return OperatorExpr.product_of(in_slot(phi_s, 2, 2), in_slot(psi_s, 2, 2))


def fg_zero_on_boundary(phi_s: SymbolExpr | None = None, psi_s: SymbolExpr | None = None) -> OperatorExpr:
    """f = phi(w), g = phi(z) + psi(w): fg = 0 on the boundary only, f(0,0) g(0,0) = 1."""
    phi_s, psi_s = phi_s or phi(), psi_s or psi()
    return OperatorExpr.product_of(in_slot(phi_s, 2, 2), in_slot(phi_s, 2, 1) + in_slot(psi_s, 2, 2))


def catalog_compact() -> OperatorExpr:
    return parse_operator("T((1 - z1*conj(z1))*(1 - z2*conj(z2)))", 2)
