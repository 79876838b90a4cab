# app/bergman/symbols.py
"""Closed symbol algebra on the closed polydisc.

A SymbolExpr is a finite sum of tensor terms ``coef * prod_j rho_j(|z_j|) z_j^a_j conj(z_j)^b_j``.
Storage is canonical: factors carry no scale, ``min(a, b) == 0`` (the common |z|^2 power
lives in rho), rho is normalized to leading coefficient 1 and like terms are merged, so
a symbol that cancels to zero has no terms at all.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, ToeplitzError
from .radial import PiecewiseRadial
from .scalars import ONE, ZERO, QQi, Scalar, as_scalar, is_unimodular, unimodular_power

log = logging.getLogger("bergman.symbols")


@dataclass(frozen=True)
class UniTerm:
    """scale * rho(|z|) * z^a * conj(z)^b on the closed disc."""

    radial: PiecewiseRadial
    a: int = 0
    b: int = 0
    scale: Scalar = ONE

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("exponents must be non-negative")

    def canonical(self) -> tuple[Scalar, "UniTerm"]:
        """Split into (coefficient, unit-scale term with min(a, b) = 0, normalized rho)."""
        s = min(self.a, self.b)
        rho = self.radial.times_r2k(s)
        lead = rho.leading_coefficient()
        if lead == 0:
            return QQi(0), UniTerm(PiecewiseRadial.constant(0))
        rho = rho.scaled(1 / lead)
        return self.scale * lead, UniTerm(rho, self.a - s, self.b - s)

    @property
    def key(self):
        return (self.radial, self.a, self.b)

    def value(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        out = self.radial(r).astype(complex)
        if self.a:
            out = out * z ** self.a
        if self.b:
            out = out * np.conj(z) ** self.b
        return complex(self.scale) * out

    def boundary_value(self, xi: Scalar) -> Scalar:
        """Exact when rho(1) is rational and a == b (or xi is one of 1, i, -1, -i)."""
        return self.scale * QQi(self.radial.at_one()) * unimodular_power(xi, self.a - self.b)

    def is_polynomial(self) -> bool:
        return self.radial.even_polynomial_in_r() is not None


_ONE_TERM = UniTerm(PiecewiseRadial.constant(1))


@dataclass(frozen=True)
class TensorTerm:
    coef: Scalar
    factors: tuple[UniTerm, ...]

    @property
    def key(self):
        return tuple(f.key for f in self.factors)

    def value(self, points: np.ndarray) -> np.ndarray:
        out = np.full(points.shape[:-1], complex(self.coef), dtype=complex)
        for j, f in enumerate(self.factors):
            if f.a == 0 and f.b == 0 and f.radial.is_constant():
                continue
            out = out * f.value(points[..., j])
        return out


def _normalize(n: int, raw: Iterable[TensorTerm]) -> tuple[TensorTerm, ...]:
    merged: dict = {}
    order: list = []
    for term in raw:
        coef = term.coef
        factors = []
        for f in term.factors:
            c, g = f.canonical()
            coef = coef * c
            factors.append(g)
        if coef == 0:
            continue
        t = TensorTerm(coef, tuple(factors))
        if t.key in merged:
            merged[t.key] = TensorTerm(merged[t.key].coef + coef, t.factors)
        else:
            merged[t.key] = t
            order.append(t.key)
    return tuple(merged[k] for k in order if merged[k].coef != 0)


@dataclass(frozen=True)
class SymbolExpr:
    n: int
    terms: tuple[TensorTerm, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("a symbol needs at least one variable")
        for t in self.terms:
            if len(t.factors) != self.n:
                raise DimensionError(f"tensor term has {len(t.factors)} factors, expected {self.n}")

    def _table(self) -> dict:
        return {t.key: t.coef for t in self.terms}

    def __eq__(self, other):
        return isinstance(other, SymbolExpr) and self.n == other.n and self._table() == other._table()

    def __hash__(self):
        return hash((self.n, frozenset(t.key for t in self.terms)))

    # -- constructors ---------------------------------------------------------
    @classmethod
    def build(cls, n: int, terms: Iterable[TensorTerm]) -> "SymbolExpr":
        return cls(n, _normalize(n, terms))

    @classmethod
    def constant(cls, n: int, c=1) -> "SymbolExpr":
        return cls.build(n, [TensorTerm(as_scalar(c), (_ONE_TERM,) * n)])

    @classmethod
    def uni(cls, n: int, j: int, term: UniTerm) -> "SymbolExpr":
        """Embed a one-variable term in slot j (1-based)."""
        _check_slot(n, j)
        factors = [_ONE_TERM] * n
        factors[j - 1] = UniTerm(term.radial, term.a, term.b)
        return cls.build(n, [TensorTerm(term.scale, tuple(factors))])

    @classmethod
    def coordinate(cls, n: int, j: int) -> "SymbolExpr":
        return cls.uni(n, j, UniTerm(PiecewiseRadial.constant(1), 1, 0))

    @classmethod
    def radial(cls, n: int, j: int, rho: PiecewiseRadial) -> "SymbolExpr":
        return cls.uni(n, j, UniTerm(rho))

    # -- algebra ----------------------------------------------------------
    def _same_n(self, other: "SymbolExpr"):
        if self.n != other.n:
            raise DimensionError(f"symbols live on D^{self.n} and D^{other.n}")

    def __add__(self, other):
        if not isinstance(other, SymbolExpr):
            other = SymbolExpr.constant(self.n, other)
        self._same_n(other)
        return SymbolExpr.build(self.n, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        if not isinstance(other, SymbolExpr):
            other = SymbolExpr.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SymbolExpr):
            return self.scaled(other)
        self._same_n(other)
        out = []
        for s in self.terms:
            for t in other.terms:
                factors = tuple(
                    UniTerm(f.radial * g.radial, f.a + g.a, f.b + g.b)
                    for f, g in zip(s.factors, t.factors)
                )
                out.append(TensorTerm(s.coef * t.coef, factors))
        return SymbolExpr.build(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SymbolExpr.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def scaled(self, c) -> "SymbolExpr":
        c = as_scalar(c)
        return SymbolExpr.build(self.n, [TensorTerm(t.coef * c, t.factors) for t in self.terms])

    def conj(self) -> "SymbolExpr":
        return SymbolExpr.build(
            self.n,
            [
                TensorTerm(t.coef.conjugate(), tuple(UniTerm(f.radial, f.b, f.a) for f in t.factors))
                for t in self.terms
            ],
        )

    # -- predicates -----------------------------------------------------------
    def is_structurally_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return self == self.conj()

    def is_exact(self) -> bool:
        return all(isinstance(t.coef, QQi) for t in self.terms)

    def radials(self) -> list[tuple[int, PiecewiseRadial]]:
        seen = []
        for t in self.terms:
            for j, f in enumerate(t.factors, start=1):
                if (j, f.radial) not in seen:
                    seen.append((j, f.radial))
        return seen

    def continuity_warnings(self) -> list[str]:
        out = []
        for j, rho in self.radials():
            for point, jump in rho.continuity_defects():
                out.append(f"radial profile in z{j} jumps by {jump} at r = {point}: not boundary-continuous")
        return out

    def is_boundary_continuous(self) -> bool:
        return not self.continuity_warnings()

    def is_polynomial(self) -> bool:
        return all(f.is_polynomial() for t in self.terms for f in t.factors)

    def depends_on(self, j: int) -> bool:
        _check_slot(self.n, j)
        return any(t.factors[j - 1] != _ONE_TERM for t in self.terms)

    def angular_degree(self, j: int) -> int:
        _check_slot(self.n, j)
        return max((abs(t.factors[j - 1].a - t.factors[j - 1].b) for t in self.terms), default=0)

    def max_shift(self) -> int:
        return max((max(f.a, f.b) for t in self.terms for f in t.factors), default=0)

    # -- evaluation -------------------------------------------------------
    def eval_many(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        if pts.shape[-1] != self.n:
            raise DimensionError(f"points have {pts.shape[-1]} coordinates, symbol needs {self.n}")
        out = np.zeros(pts.shape[:-1], dtype=complex)
        for t in self.terms:
            out = out + t.value(pts)
        return out

    def __call__(self, *z) -> complex:
        return eval_symbol(self, z)

    def factor_tensor(self) -> tuple["SymbolExpr", ...] | None:
        return factor_tensor(self)

    @property
    def text(self) -> str:
        from .parser import serialize_symbol

        return serialize_symbol(self)


def _check_slot(n: int, k: int):
    if not 1 <= k <= n:
        raise DimensionError(f"coordinate {k} outside 1..{n}")


def eval_symbol(s: SymbolExpr, z: Sequence[complex]) -> complex:
    coords = tuple(complex(c) for c in (z[0] if len(z) == 1 and isinstance(z[0], (tuple, list)) else z))
    if any(abs(c) > 1 + 1e-12 for c in coords):
        raise ToeplitzError("symbols are evaluated on the closed polydisc only")
    return complex(s.eval_many(np.array([coords]))[0])


def restrict(s: SymbolExpr, k: int, xi: Scalar) -> SymbolExpr:
    """Substitute z_k = xi on the unit circle; the result lives on D^(n-1)."""
    if s.n < 2:
        raise DimensionError("restriction needs at least two variables")
    _check_slot(s.n, k)
    if not is_unimodular(xi):
        raise ToeplitzError(f"restriction point {xi!r} is not on the unit circle")
    xi = as_scalar(xi)
    out = []
    for t in s.terms:
        factor = t.factors[k - 1]
        value = factor.boundary_value(xi)
        out.append(TensorTerm(t.coef * value, t.factors[: k - 1] + t.factors[k:]))
    return SymbolExpr.build(s.n - 1, out)


def extend(s: SymbolExpr, k: int) -> SymbolExpr:
    """Insert a constant-one factor in slot k: the symbol no longer sees z_k."""
    _check_slot(s.n + 1, k)
    return SymbolExpr.build(
        s.n + 1,
        [TensorTerm(t.coef, t.factors[: k - 1] + (_ONE_TERM,) + t.factors[k - 1:]) for t in s.terms],
    )


def factor_tensor(s: SymbolExpr) -> tuple[SymbolExpr, ...] | None:
    """Per-variable factors (f_1(z_1), ..., f_n(z_n)) with s = prod_j f_j, or None."""
    if not s.terms:
        return None
    keys = [sorted({t.factors[j].key for t in s.terms}, key=repr) for j in range(s.n)]
    coef = {t.key: t.coef for t in s.terms}
    ref = s.terms[0]
    base = ref.coef
    per_var: list[SymbolExpr] = []
    ratios: list[dict] = []
    for j in range(s.n):
        weights = {}
        for key in keys[j]:
            probe = list(ref.key)
            probe[j] = key
            weights[key] = coef.get(tuple(probe), ZERO) / base
        ratios.append(weights)
    for t in s.terms:
        expected = base
        for j in range(s.n):
            expected = expected * ratios[j][t.key[j]]
        if not _close(expected, t.coef):
            return None
    if len(coef) != math.prod(sum(1 for w in r.values() if w != 0) for r in ratios):
        return None
    by_key = {t.factors[j].key: t.factors[j] for t in s.terms for j in range(s.n)}
    for j in range(s.n):
        terms = []
        for key, w in ratios[j].items():
            if w == 0:
                continue
            scale = w * base if j == 0 else w
            u = by_key[key]
            terms.append(TensorTerm(scale, (UniTerm(u.radial, u.a, u.b),)))
        per_var.append(SymbolExpr.build(1, terms))
    return tuple(per_var)


def _close(x, y) -> bool:
    if isinstance(x, QQi) and isinstance(y, QQi):
        return x == y
    return abs(complex(x) - complex(y)) <= 1e-13 * max(1.0, abs(complex(y)))


# ---- boundary sampling ----------------------------------------------------

@dataclass(frozen=True)
class BoundaryGrid:
    xi_count: int = 64
    radii: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 0.95)
    angles: int = 32

    def face_points(self, n: int, k: int) -> np.ndarray:
        """Points of the face |z_k| = 1: xi on slot k, polar tensor grid elsewhere."""
        _check_slot(n, k)
        xis = np.exp(2j * np.pi * np.arange(self.xi_count) / self.xi_count)
        polar = (
            np.array(self.radii)[:, None] * np.exp(2j * np.pi * np.arange(self.angles) / self.angles)[None, :]
        ).ravel()
        axes = [polar] * n
        axes[k - 1] = xis
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


def boundary_face_max(s: SymbolExpr, k: int, grid: BoundaryGrid | None = None) -> float:
    grid = grid or BoundaryGrid()
    values = s.eval_many(grid.face_points(s.n, k))
    return float(np.max(np.abs(values))) if values.size else 0.0


def disc_grid_max(s: SymbolExpr, radii: int = 101, angles: int = 64) -> float:
    """max |s| over a polar tensor grid of the closed polydisc (radius 1 included)."""
    r = np.linspace(0.0, 1.0, radii)
    polar = (r[:, None] * np.exp(2j * np.pi * np.arange(angles) / angles)[None, :]).ravel()
    mesh = np.meshgrid(*([polar] * s.n), indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=-1)
    return float(np.max(np.abs(s.eval_many(pts))))


def vanishes_on_circle_sampled(s: SymbolExpr, count: int = 1024, tol: float = 1e-12) -> bool:
    if s.n != 1:
        raise DimensionError("circle sampling is for one-variable symbols")
    xis = np.exp(2j * np.pi * np.arange(count) / count)[:, None]
    return float(np.max(np.abs(s.eval_many(xis)))) < tol
