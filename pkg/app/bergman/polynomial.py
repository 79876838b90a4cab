# app/bergman/polynomial.py
"""Exact polynomials in z_1..z_n and their conjugates.

A PolyZZbar maps a pair of exponent tuples (a, b) -- the monomial z^a conj(z)^b -- to a
QQi coefficient; zero coefficients are never stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionError, NonPolynomialError
from .radial import PiecewiseRadial, poly_add, poly_divide_by_t_minus_one, poly_eval, poly_strip
from .scalars import ONE, ZERO, QQi, format_rational
from .symbols import SymbolExpr, TensorTerm, UniTerm

Exponents = tuple[tuple[int, ...], tuple[int, ...]]


def _canonicalize(coeffs: Mapping[Exponents, QQi]) -> dict[Exponents, QQi]:
    return {k: v for k, v in coeffs.items() if v != 0}


@dataclass(frozen=True)
class PolyZZbar:
    n: int
    coeffs: Mapping[Exponents, QQi] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (a, b), c in self.coeffs.items():
            if len(a) != self.n or len(b) != self.n:
                raise DimensionError(f"monomial {a},{b} does not have {self.n} variables")
            exact = QQi.coerce(c)
            if exact is None:
                if not isinstance(c, QQi):
                    raise NonPolynomialError(f"coefficient {c!r} is not a Gaussian rational")
                exact = c
            clean[(tuple(a), tuple(b))] = exact
        object.__setattr__(self, "coeffs", _canonicalize(clean))

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, n: int, c=1) -> "PolyZZbar":
        return cls(n, {((0,) * n, (0,) * n): QQi.coerce(c) or c})

    @classmethod
    def monomial(cls, n: int, a: Iterable[int], b: Iterable[int], c=1) -> "PolyZZbar":
        return cls(n, {(tuple(a), tuple(b)): c})

    @classmethod
    def z(cls, n: int, j: int) -> "PolyZZbar":
        a = [0] * n
        a[j - 1] = 1
        return cls.monomial(n, a, [0] * n)

    @classmethod
    def zbar(cls, n: int, j: int) -> "PolyZZbar":
        b = [0] * n
        b[j - 1] = 1
        return cls.monomial(n, [0] * n, b)

    @classmethod
    def one_minus_mod2(cls, n: int, j: int) -> "PolyZZbar":
        return cls.constant(n, 1) - cls.z(n, j) * cls.zbar(n, j)

    # -- algebra --------------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return PolyZZbar(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyZZbar(self.n, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
                out[key] = out.get(key, ZERO) + c1 * c2
        return PolyZZbar(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PolyZZbar.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def _lift(self, other) -> "PolyZZbar":
        if isinstance(other, PolyZZbar):
            if other.n != self.n:
                raise DimensionError(f"polynomials in {self.n} and {other.n} variables")
            return other
        return PolyZZbar.constant(self.n, other)

    def conj(self) -> "PolyZZbar":
        return PolyZZbar(self.n, {(b, a): c.conjugate() for (a, b), c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, PolyZZbar) and self.n == other.n and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs)))

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self.coeffs), default=0)

    # -- evaluation -----------------------------------------------------------
    def eval_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        out = np.zeros(pts.shape[:-1], dtype=complex)
        for (a, b), c in self.coeffs.items():
            term = np.full(pts.shape[:-1], complex(c))
            for j in range(self.n):
                if a[j]:
                    term = term * pts[..., j] ** a[j]
                if b[j]:
                    term = term * np.conj(pts[..., j]) ** b[j]
            out = out + term
        return out

    def __call__(self, *z) -> complex:
        return complex(self.eval_many(np.array([z], dtype=complex))[0])

    # -- conversions ----------------------------------------------------------
    def to_symbol(self) -> SymbolExpr:
        one = PiecewiseRadial.constant(1)
        return SymbolExpr.build(
            self.n,
            [
                TensorTerm(c, tuple(UniTerm(one, a[j], b[j]) for j in range(self.n)))
                for (a, b), c in self.coeffs.items()
            ],
        )

    @classmethod
    def from_symbol(cls, s: SymbolExpr) -> "PolyZZbar | None":
        """Inverse of to_symbol; None when a coefficient is a float or a profile is not a polynomial in r^2."""
        out = PolyZZbar(s.n)
        for t in s.terms:
            if not isinstance(t.coef, QQi):
                return None
            term = PolyZZbar.constant(s.n, t.coef)
            for j, f in enumerate(t.factors):
                tcoeffs = f.radial.even_polynomial_in_r()
                if tcoeffs is None:
                    return None
                factor = PolyZZbar(s.n)
                for power, c in enumerate(tcoeffs):
                    if c == 0:
                        continue
                    a = [0] * s.n
                    b = [0] * s.n
                    a[j] = f.a + power
                    b[j] = f.b + power
                    factor = factor + PolyZZbar.monomial(s.n, a, b, QQi(c))
                term = term * factor
            out = out + term
        return out

    @property
    def text(self) -> str:
        return serialize_poly(self)


# ---- calculus ---------------------------------------------------------------

def laplacian_j(p: PolyZZbar, j: int) -> PolyZZbar:
    """Delta_j p = 4 d^2 p / dz_j dconj(z_j), exactly."""
    if not 1 <= j <= p.n:
        raise DimensionError(f"coordinate {j} outside 1..{p.n}")
    i = j - 1
    out = {}
    for (a, b), c in p.coeffs.items():
        if a[i] == 0 or b[i] == 0:
            continue
        a2 = a[:i] + (a[i] - 1,) + a[i + 1:]
        b2 = b[:i] + (b[i] - 1,) + b[i + 1:]
        out[(a2, b2)] = out.get((a2, b2), ZERO) + c * (4 * a[i] * b[i])
    return PolyZZbar(p.n, out)


def is_n_harmonic(p: PolyZZbar) -> bool:
    return all(laplacian_j(p, j).is_zero() for j in range(1, p.n + 1))


@dataclass(frozen=True)
class RadialForm:
    """f(z) = sum_j p_j(|z|^2) z^j + sum_{j>=1} q_j(|z|^2) conj(z)^j (coefficient tuples ascending in t)."""

    p: Mapping[int, tuple[QQi, ...]]
    q: Mapping[int, tuple[QQi, ...]]

    def reconstruct(self) -> PolyZZbar:
        out = PolyZZbar(1)
        for j, poly in self.p.items():
            for s, c in enumerate(poly):
                out = out + PolyZZbar.monomial(1, [s + j], [s], c)
        for j, poly in self.q.items():
            for s, c in enumerate(poly):
                out = out + PolyZZbar.monomial(1, [s], [s + j], c)
        return out

    def polys(self):
        yield from self.p.values()
        yield from self.q.values()


def _require_one_var(p: PolyZZbar):
    if p.n != 1:
        raise DimensionError("this lemma is about polynomials of one variable")


def canonical_radial_form(p: PolyZZbar) -> RadialForm:
    _require_one_var(p)
    hol: dict[int, list] = {}
    anti: dict[int, list] = {}
    for ((a,), (b,)), c in p.coeffs.items():
        s = min(a, b)
        bucket, j = (hol, a - b) if a >= b else (anti, b - a)
        poly = bucket.setdefault(j, [])
        while len(poly) <= s:
            poly.append(ZERO)
        poly[s] = poly[s] + c
    clean = lambda d: {j: tuple(poly_strip(v)) for j, v in sorted(d.items()) if poly_strip(v)}
    return RadialForm(clean(hol), clean(anti))


def divide_by_one_minus_mod2(p: PolyZZbar) -> PolyZZbar | None:
    """g with p = (1 - |z|^2) g, or None when p does not vanish on the circle."""
    form = canonical_radial_form(p)
    quotient_p, quotient_q = {}, {}
    for target, source in ((quotient_p, form.p), (quotient_q, form.q)):
        for j, poly in source.items():
            q, remainder = poly_divide_by_t_minus_one(poly)
            if remainder != 0:
                return None
            # p(t) = (t - 1) q(t) = (1 - t) * (-q(t))
            target[j] = tuple(-c for c in q)
    return RadialForm(quotient_p, quotient_q).reconstruct()


def circle_vanishing(p: PolyZZbar) -> bool:
    form = canonical_radial_form(p)
    return all(poly_eval(poly, ONE) == 0 for poly in form.polys())


def restrict_poly_slot(p: PolyZZbar, k: int) -> dict[Exponents, PolyZZbar]:
    """Group p by its exponents outside slot k; each value is a one-variable polynomial in z_k."""
    if not 1 <= k <= p.n:
        raise DimensionError(f"coordinate {k} outside 1..{p.n}")
    i = k - 1
    groups: dict[Exponents, dict] = {}
    for (a, b), c in p.coeffs.items():
        rest = (a[:i] + a[i + 1:], b[:i] + b[i + 1:])
        groups.setdefault(rest, {})[((a[i],), (b[i],))] = c
    return {rest: PolyZZbar(1, coeffs) for rest, coeffs in groups.items()}


def vanishes_on_face(p: PolyZZbar, k: int) -> bool:
    """True iff p = 0 on {|z_k| = 1} x closed D^(n-1)."""
    if p.n == 1:
        return circle_vanishing(p)
    return all(circle_vanishing(q) for q in restrict_poly_slot(p, k).values())


def symbol_to_poly(s: SymbolExpr) -> PolyZZbar:
    p = PolyZZbar.from_symbol(s)
    if p is None:
        raise NonPolynomialError("symbol is not a polynomial in z and conj(z) with rational coefficients")
    return p


# ---- text -----------------------------------------------------------------

def _coef_text(c: QQi) -> str:
    if c.im == 0:
        return format_rational(c.re)
    if c.re == 0:
        return f"{format_rational(c.im)}*i"
    return f"({format_rational(c.re)} + {format_rational(c.im)}*i)"


def serialize_poly(p: PolyZZbar) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (a, b), c in sorted(p.coeffs.items(), key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0])):
        factors = []
        for j in range(p.n):
            if a[j]:
                factors.append(f"z{j + 1}" + (f"^{a[j]}" if a[j] > 1 else ""))
            if b[j]:
                factors.append(f"conj(z{j + 1})" + (f"^{b[j]}" if b[j] > 1 else ""))
        negative = c.im == 0 and c.re < 0
        mag = -c if negative else c
        if factors and mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coef_text(mag)] + factors)
        parts.append(("-" if negative else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
