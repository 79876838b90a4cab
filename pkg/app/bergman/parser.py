# app/bergman/parser.py
"""Recursive-descent parser for symbol and operator expressions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*          '/' only by a nonzero constant
    unary  := '-' unary | power
    power  := atom ('^' uint)?
    atom   := number | 'i' | 'z'digits | 'conj(' expr ')' | '(' expr ')'
            | 'radial(' 'z'digits ';' piece (',' piece)* ')'
    piece  := '[' rat ',' rat ']' ':' poly-in-r

    opexpr := opterm (('+' | '-') opterm)*
    opterm := (rat '*')? 'T(' expr ')' ('*' 'T(' expr ')')*

Numbers are read exactly ("0.25" is 1/4). Error offsets count UTF-8 bytes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import SymbolSyntaxError
from .radial import PiecewiseRadial
from .scalars import I, QQi, format_rational
from .symbols import SymbolExpr, UniTerm
from .toeplitz import OperatorExpr

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],;:]))"
)
_COORD = re.compile(r"z(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str  # num | name | op | end
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SymbolSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), _byte_offset(text, m.start(kind))))
        pos = m.end()
    out.append(Token("end", "", _byte_offset(text, len(text))))
    return out


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def infer_dimension(text: str) -> int:
    best = 1
    for tok in tokenize(text):
        m = _COORD.match(tok.text) if tok.kind == "name" else None
        if m:
            best = max(best, int(m.group(1)))
    return best


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.n = n

    # -- token helpers -------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def error(self, message: str, tok: Token | None = None) -> SymbolSyntaxError:
        return SymbolSyntaxError(message, (tok or self.tok).offset)

    def finish(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    # -- symbols ---------------------------------------------------------------
    def expr(self) -> SymbolExpr:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self) -> SymbolExpr:
        left = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance()
            right = self.unary()
            if op.text == "*":
                left = left * right
            else:
                c = _constant_value(right)
                if c is None or c == 0:
                    raise self.error("division only by a nonzero constant", op)
                left = left.scaled(1 / c)
        return left

    def unary(self) -> SymbolExpr:
        if self.at("-"):
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> SymbolExpr:
        base = self.atom()
        if self.at("^"):
            self.advance()
            tok = self.tok
            if tok.kind != "num" or not tok.text.isdigit():
                raise self.error("exponent must be a non-negative integer")
            self.advance()
            base = base ** int(tok.text)
        return base

    def atom(self) -> SymbolExpr:
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return SymbolExpr.constant(self.n, Fraction(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "name":
            if tok.text == "i":
                self.advance()
                return SymbolExpr.constant(self.n, I)
            if tok.text == "conj":
                self.advance()
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return inner.conj()
            if tok.text == "radial":
                return self.radial()
            j = self.coordinate()
            return SymbolExpr.coordinate(self.n, j)
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def coordinate(self) -> int:
        tok = self.tok
        m = _COORD.match(tok.text) if tok.kind == "name" else None
        if not m:
            raise self.error(f"unknown name {tok.text!r}")
        j = int(m.group(1))
        if not 1 <= j <= self.n:
            raise self.error(f"coordinate z{j} outside z1..z{self.n}")
        self.advance()
        return j

    def radial(self) -> SymbolExpr:
        start = self.expect("radial")
        self.expect("(")
        j = self.coordinate()
        self.expect(";")
        pieces = [self.piece()]
        while self.at(","):
            self.advance()
            pieces.append(self.piece())
        self.expect(")")
        try:
            rho = PiecewiseRadial.from_pieces(pieces)
        except ValueError as exc:
            raise self.error(str(exc), start) from exc
        return SymbolExpr.radial(self.n, j, rho)

    def piece(self) -> tuple[Fraction, Fraction, tuple]:
        self.expect("[")
        lo = self.rational()
        self.expect(",")
        hi = self.rational()
        self.expect("]")
        self.expect(":")
        return lo, hi, self.poly_in_r()

    def rational(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        tok = self.tok
        if tok.kind != "num":
            raise self.error("expected a number")
        self.advance()
        value = Fraction(tok.text)
        if self.at("/"):
            self.advance()
            den = self.tok
            if den.kind != "num" or Fraction(den.text) == 0:
                raise self.error("expected a nonzero denominator")
            self.advance()
            value /= Fraction(den.text)
        return sign * value

    def poly_in_r(self) -> tuple:
        coeffs: dict[int, Fraction] = {}
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        while True:
            c, k = self.r_monomial()
            coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
            if self.at("+") or self.at("-"):
                sign = 1 if self.advance().text == "+" else -1
                continue
            break
        top = max(coeffs)
        return tuple(coeffs.get(k, Fraction(0)) for k in range(top + 1))

    def r_monomial(self) -> tuple[Fraction, int]:
        c = Fraction(1)
        if self.tok.kind == "num":
            c = self.rational()
            if self.at("*"):
                self.advance()
            elif not self.at("r"):
                return c, 0
        if not self.at("r"):
            raise self.error("expected a polynomial in r")
        self.advance()
        k = 1
        if self.at("^"):
            self.advance()
            tok = self.tok
            if tok.kind != "num" or not tok.text.isdigit():
                raise self.error("exponent must be a non-negative integer")
            self.advance()
            k = int(tok.text)
        return c, k

    # -- operators -------------------------------------------------------------
    def op_expr(self) -> OperatorExpr:
        left = self.op_term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.op_term()
            left = left + (right if op == "+" else right.scaled(-1))
        return left

    def op_term(self) -> OperatorExpr:
        coef = Fraction(1)
        if self.at("-"):
            self.advance()
            coef = -coef
        if self.tok.kind == "num":
            coef *= self.rational()
            self.expect("*")
        factors = [self.toeplitz()]
        while self.at("*"):
            self.advance()
            factors.append(self.toeplitz())
        factors[0] = factors[0].scaled(coef) if coef != 1 else factors[0]
        return OperatorExpr(self.n, (tuple(factors),))

    def toeplitz(self) -> SymbolExpr:
        self.expect("T")
        self.expect("(")
        inner = self.expr()
        self.expect(")")
        return inner


def _constant_value(s: SymbolExpr):
    if not s.terms:
        return 0
    if len(s.terms) != 1:
        return None
    t = s.terms[0]
    if any(f.a or f.b or not f.radial.is_constant() for f in t.factors):
        return None
    return t.coef


def parse_symbol(text: str, n: int | None = None) -> SymbolExpr:
    """Parse a symbol on D^n; n defaults to the largest coordinate index used."""
    n = n or infer_dimension(text)
    p = _Parser(text, n)
    out = p.expr()
    p.finish()
    return out


def parse_operator(text: str, n: int | None = None) -> OperatorExpr:
    n = n or infer_dimension(text)
    p = _Parser(text, n)
    out = p.op_expr()
    p.finish()
    return out


# ---- serialization -------------------------------------------------------------

def _scalar_text(c) -> str:
    if isinstance(c, QQi):
        if c.im == 0:
            return format_rational(c.re)
        if c.re == 0:
            return f"{format_rational(c.im)}*i"
        return f"({format_rational(c.re)} + {format_rational(c.im)}*i)"
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    return f"({repr(c.real)} + {repr(c.imag)}*i)"


def _is_negative(c) -> bool:
    if isinstance(c, QQi):
        return c.im == 0 and c.re < 0
    c = complex(c)
    return c.imag == 0 and c.real < 0


def _power(base: str, k: int) -> list[str]:
    if k == 0:
        return []
    return [base if k == 1 else f"{base}^{k}"]


def _factor_text(u: UniTerm, j: int) -> list[str]:
    z = f"z{j}"
    even = u.radial.even_polynomial_in_r()
    shift = 0
    parts: list[str] = []
    if even is not None and sum(1 for c in even if c != 0) == 1:
        # rho = r^(2k) after normalization: fold it into the monomial
        shift = next(k for k, c in enumerate(even) if c != 0)
    elif even is not None:
        terms = []
        for k, c in enumerate(even):
            if c == 0:
                continue
            mono = "*".join(_power(z, k) + _power(f"conj({z})", k))
            mag = format_rational(abs(c))
            body = mag if not mono else (mono if abs(c) == 1 else f"{mag}*{mono}")
            terms.append(("-" if c < 0 else "+", body))
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        parts.append("(" + head + "".join(f" {s} {b}" for s, b in terms[1:]) + ")")
    else:
        parts.append(f"radial({z}; {u.radial.text})")
    return parts + _power(z, u.a + shift) + _power(f"conj({z})", u.b + shift)


def serialize_symbol(s: SymbolExpr) -> str:
    if not s.terms:
        return "0"
    chunks = []
    for t in s.terms:
        factors = [x for j, u in enumerate(t.factors, start=1) for x in _factor_text(u, j)]
        negative = _is_negative(t.coef)
        mag = -t.coef if negative else t.coef
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_scalar_text(mag)] + factors)
        chunks.append(("-" if negative else "+", body))
    out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


def serialize_operator(expr: OperatorExpr) -> str:
    if not expr.products:
        return "0*T(1)"
    return " + ".join("*".join(f"T({s.text})" for s in p) for p in expr.products)


def iter_symbol_texts(expr: OperatorExpr) -> Iterator[str]:
    for s in expr.symbols():
        yield s.text
