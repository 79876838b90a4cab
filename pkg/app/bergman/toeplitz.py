# app/bergman/toeplitz.py
"""Truncated Toeplitz matrices in the orthonormal monomial basis.

Exact path: one-variable matrices are ScaledBandMatrix objects, actual entry
A[l, m] = sqrt(l + 1) sqrt(m + 1) * At[l, m] with At rational. n-variable operators are sums of
Kronecker products; TensorOperator keeps them factored so matvec never needs the dense matrix.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence

import numpy as np

from .basis import Truncation
from .errors import DimensionError, ToeplitzError, TruncationError
from .quadops import DiscRule, composite_rule, exact_radial_moment
from .scalars import ONE, ZERO, QQi, Scalar, is_exact
from .symbols import SymbolExpr, UniTerm, restrict

log = logging.getLogger("bergman.toeplitz")

PAD_CAP = 16


# ---- exact one-variable matrices --------------------------------------------

@dataclass(frozen=True)
class ScaledBandMatrix:
    N: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 1:
            raise TruncationError("matrix size must be >= 1")
        for (l, m) in self.entries:
            if not (0 <= l < self.N and 0 <= m < self.N):
                raise TruncationError(f"entry ({l}, {m}) outside size {self.N}")

    @classmethod
    def identity(cls, N: int) -> "ScaledBandMatrix":
        return cls(N, {(m, m): Fraction(1, m + 1) for m in range(N)})

    def offsets(self) -> set[int]:
        return {l - m for (l, m) in self.entries}

    def actual(self, l: int, m: int) -> complex:
        return math.sqrt((l + 1) * (m + 1)) * complex(self.entries.get((l, m), 0))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.N, self.N), dtype=complex)
        for (l, m), v in self.entries.items():
            out[l, m] = math.sqrt((l + 1) * (m + 1)) * complex(v)
        return out

    def scaled(self, c: Scalar) -> "ScaledBandMatrix":
        return ScaledBandMatrix(self.N, {k: v * c for k, v in self.entries.items() if v * c != 0})

    def __add__(self, other: "ScaledBandMatrix") -> "ScaledBandMatrix":
        if other.N != self.N:
            raise TruncationError(f"sizes {self.N} and {other.N}")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return ScaledBandMatrix(self.N, {k: v for k, v in out.items() if v != 0})

    def crop(self, N: int) -> "ScaledBandMatrix":
        return ScaledBandMatrix(N, {(l, m): v for (l, m), v in self.entries.items() if l < N and m < N})

    def is_zero(self) -> bool:
        return not self.entries


@lru_cache(maxsize=4096)
def uni_band(term: UniTerm, N: int) -> ScaledBandMatrix:
    """T of rho(r) z^a conj(z)^b: At[l, m] = moment(rho, m + a) on the diagonal l = m + a - b."""
    out = {}
    for m in range(N):
        l = m + term.a - term.b
        if not 0 <= l < N:
            continue
        v = exact_radial_moment(term.radial, m + term.a)
        if v != 0:
            out[(l, m)] = v * term.scale if term.scale != ONE else v
    return ScaledBandMatrix(N, out)


def compose_exact(A: ScaledBandMatrix, B: ScaledBandMatrix) -> ScaledBandMatrix:
    """(AB)t[l, m] = sum_k (k + 1) At[l, k] Bt[k, m]."""
    if A.N != B.N:
        raise TruncationError(f"cannot compose sizes {A.N} and {B.N}")
    rows: dict[int, list] = {}
    for (k, m), v in B.entries.items():
        rows.setdefault(k, []).append((m, v))
    out: dict = {}
    for (l, k), a in A.entries.items():
        for m, b in rows.get(k, ()):
            out[(l, m)] = out.get((l, m), 0) + (k + 1) * a * b
    return ScaledBandMatrix(A.N, {key: v for key, v in out.items() if v != 0})


# ---- dense operators ----------------------------------------------------------

@dataclass(frozen=True)
class OperatorMatrix:
    trunc: Truncation
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        size = self.trunc.size
        if a.shape != (size, size):
            raise TruncationError(f"matrix shape {a.shape} does not match truncation size {size}")
        object.__setattr__(self, "entries", a)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.entries @ x

    def rmatvec(self, x: np.ndarray) -> np.ndarray:
        return self.entries.conj().T @ x

    def to_dense(self) -> np.ndarray:
        return self.entries

    def crop(self, trunc: Truncation) -> "OperatorMatrix":
        idx = trunc.embed_indices(self.trunc)
        return OperatorMatrix(trunc, self.entries[np.ix_(idx, idx)])

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0))

    def is_hermitian(self, tol: float = 1e-14) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.entries), initial=0.0)))
        return self.hermitian_defect() <= tol * scale

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if other.trunc != self.trunc:
            raise TruncationError("adding operators on different truncations")
        return OperatorMatrix(self.trunc, self.entries + other.entries)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if other.trunc != self.trunc:
            raise TruncationError("composing operators on different truncations")
        return OperatorMatrix(self.trunc, self.entries @ other.entries)


def kronecker(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    """A acts on variable 1 (slowest), B on the remaining ones."""
    return OperatorMatrix(Truncation(A.trunc.caps + B.trunc.caps), np.kron(A.entries, B.entries))


@dataclass
class TensorOperator:
    """sum_s coef_s * (M_s1 x M_s2 x ... x M_sn), factors kept separate."""

    trunc: Truncation
    terms: list[tuple[complex, tuple[np.ndarray, ...]]] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.trunc.size, self.trunc.size)

    def _apply(self, x: np.ndarray, adjoint: bool) -> np.ndarray:
        x = np.asarray(x, dtype=complex).reshape(self.trunc.shape)
        out = np.zeros(self.trunc.shape, dtype=complex)
        for coef, mats in self.terms:
            y = x
            for j, M in enumerate(mats):
                M = M.conj().T if adjoint else M
                y = np.moveaxis(np.tensordot(M, y, axes=([1], [j])), 0, j)
            out += (np.conj(coef) if adjoint else coef) * y
        return out.ravel()

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self._apply(x, adjoint=False)

    def rmatvec(self, x: np.ndarray) -> np.ndarray:
        return self._apply(x, adjoint=True)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=complex)
        for coef, mats in self.terms:
            block = np.ones((1, 1), dtype=complex)
            for M in mats:
                block = np.kron(block, M)
            out += coef * block
        return out

    def to_operator_matrix(self) -> OperatorMatrix:
        return OperatorMatrix(self.trunc, self.to_dense())

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        if other.trunc != self.trunc:
            raise TruncationError("adding operators on different truncations")
        return TensorOperator(self.trunc, self.terms + other.terms)

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        if other.trunc != self.trunc:
            raise TruncationError("composing operators on different truncations")
        terms = [
            (c1 * c2, tuple(A @ B for A, B in zip(m1, m2)))
            for c1, m1 in self.terms
            for c2, m2 in other.terms
        ]
        return TensorOperator(self.trunc, terms)

    def crop(self, trunc: Truncation) -> "TensorOperator":
        if trunc.n != self.trunc.n:
            raise DimensionError("crop keeps the number of variables")
        return TensorOperator(trunc, [(c, tuple(M[:N, :N] for M, N in zip(mats, trunc.caps))) for c, mats in self.terms])


# ---- assembly -----------------------------------------------------------------

def quadrature_band(term: UniTerm, N: int, qr: int = 64) -> np.ndarray:
    radial = composite_rule(term.radial.breakpoints, qr)
    rule = DiscRule(radial, 2 * N + term.a + term.b + 1)
    z, w = rule.points()
    f = term.value(z)
    m = np.arange(N)[:, None]
    E = np.sqrt(m + 1) * z[None, :] ** m
    return (np.conj(E) * (w * f)[None, :]) @ E.T


def factor_matrix(term: UniTerm, N: int, mode: str = "exact", qr: int = 64) -> np.ndarray:
    if mode == "exact":
        return uni_band(term, N).to_dense()
    if mode == "quadrature":
        return quadrature_band(term, N, qr)
    raise ValueError(f"unknown assembly mode {mode!r}")


def tensor_operator(f: SymbolExpr, trunc: Truncation, mode: str = "exact", qr: int = 64) -> TensorOperator:
    if f.n != trunc.n:
        raise DimensionError(f"symbol on D^{f.n}, truncation for D^{trunc.n}")
    return TensorOperator(
        trunc,
        [
            (complex(t.coef), tuple(factor_matrix(u, N, mode, qr) for u, N in zip(t.factors, trunc.caps)))
            for t in f.terms
        ],
    )


def assemble(f: SymbolExpr, trunc: Truncation, mode: str = "exact", qr: int = 64) -> OperatorMatrix:
    A = tensor_operator(f, trunc, mode, qr).to_operator_matrix()
    if f.is_real() and not A.is_hermitian(1e-13):
        raise ToeplitzError(f"T_f of a real symbol is not Hermitian (defect {A.hermitian_defect():.3e})")
    return A


# ---- operator expressions -------------------------------------------------

@dataclass(frozen=True)
class OperatorExpr:
    """sum_j T_{f_j1} ... T_{f_jm_j}; a scalar factor of a product lives in its first symbol."""

    n: int
    products: tuple[tuple[SymbolExpr, ...], ...] = ()

    def __post_init__(self):
        for prod in self.products:
            if not prod:
                raise ValueError("empty operator product")
            for s in prod:
                if s.n != self.n:
                    raise DimensionError(f"operator on D^{self.n} contains a symbol on D^{s.n}")

    @classmethod
    def single(cls, f: SymbolExpr) -> "OperatorExpr":
        return cls(f.n, ((f,),))

    @classmethod
    def product_of(cls, *symbols: SymbolExpr) -> "OperatorExpr":
        return cls(symbols[0].n, (tuple(symbols),))

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        if other.n != self.n:
            raise DimensionError("operators on different polydiscs")
        return OperatorExpr(self.n, self.products + other.products)

    def __mul__(self, other: "OperatorExpr") -> "OperatorExpr":
        if other.n != self.n:
            raise DimensionError("operators on different polydiscs")
        return OperatorExpr(self.n, tuple(p + q for p in self.products for q in other.products))

    def scaled(self, c) -> "OperatorExpr":
        return OperatorExpr(self.n, tuple((p[0].scaled(c),) + p[1:] for p in self.products))

    def symbols(self) -> list[SymbolExpr]:
        return [s for p in self.products for s in p]

    def live_products(self) -> tuple[tuple[SymbolExpr, ...], ...]:
        return tuple(p for p in self.products if not any(s.is_structurally_zero() for s in p))

    def is_structurally_zero(self) -> bool:
        return not self.live_products()

    def is_exact(self) -> bool:
        return all(s.is_exact() for s in self.symbols())

    def restrict(self, k: int, xi: Scalar) -> "OperatorExpr":
        """Replace every f by R_{k,xi} f; products with a vanishing factor are dropped."""
        products = tuple(tuple(restrict(s, k, xi) for s in p) for p in self.products)
        out = OperatorExpr(self.n - 1, products)
        return OperatorExpr(out.n, out.live_products())

    def symbol_sum(self) -> SymbolExpr:
        total = SymbolExpr(self.n)
        for p in self.products:
            term = SymbolExpr.constant(self.n, 1)
            for s in p:
                term = term * s
            total = total + term
        return total

    @property
    def text(self) -> str:
        from .parser import serialize_operator

        return serialize_operator(self)


def default_pad(expr: OperatorExpr) -> int:
    best = 0
    for p in expr.products:
        best = max(best, sum(s.max_shift() for s in p))
    return min(best, PAD_CAP)


def required_pad(expr: OperatorExpr) -> int:
    """Padding from which the padded product equals the compression of the true product."""
    best = 0
    for p in expr.products:
        per_slot = [sum(s.angular_degree(j) for s in p[1:]) for j in range(1, expr.n + 1)]
        best = max(best, max(per_slot, default=0))
    return min(best, PAD_CAP)


def compose(expr: OperatorExpr, trunc: Truncation, pad: int | None = None, mode: str = "exact", qr: int = 64) -> OperatorMatrix:
    """Assemble every factor at caps + pad, multiply in order, sum, crop to trunc (dense)."""
    if expr.n != trunc.n:
        raise DimensionError(f"operator on D^{expr.n}, truncation for D^{trunc.n}")
    pad = default_pad(expr) if pad is None else pad
    big = trunc.padded(pad)
    total = np.zeros((big.size, big.size), dtype=complex)
    for p in expr.products:
        acc = None
        for s in p:
            M = tensor_operator(s, big, mode, qr).to_dense()
            acc = M if acc is None else acc @ M
        total += acc
    idx = trunc.embed_indices(big)
    return OperatorMatrix(trunc, total[np.ix_(idx, idx)])


def compose_operator(expr: OperatorExpr, trunc: Truncation, pad: int | None = None, mode: str = "exact", qr: int = 64) -> TensorOperator:
    """Same operator as compose(), kept as a sum of Kronecker products (per-variable products, then cropped)."""
    if expr.n != trunc.n:
        raise DimensionError(f"operator on D^{expr.n}, truncation for D^{trunc.n}")
    pad = default_pad(expr) if pad is None else pad
    big = trunc.padded(pad)
    out = TensorOperator(big)
    for p in expr.live_products():
        acc = None
        for s in p:
            T = tensor_operator(s, big, mode, qr)
            acc = T if acc is None else acc @ T
        out = out + acc
    return out.crop(trunc)


def exact_compression(expr: OperatorExpr, trunc: Truncation, pad: int | None = None) -> dict | None:
    """Scaled entries {((l..), (m..)): At} of the padded, cropped operator; None off the exact path."""
    if not expr.is_exact():
        return None
    pad = default_pad(expr) if pad is None else pad
    big = trunc.padded(pad)
    out: dict = {}
    for p in expr.live_products():
        terms = [(t.coef, tuple(uni_band(u, N) for u, N in zip(t.factors, big.caps))) for t in p[0].terms]
        for s in p[1:]:
            terms = [
                (c * t.coef, tuple(compose_exact(B, uni_band(u, N)) for B, u, N in zip(bands, t.factors, big.caps)))
                for c, bands in terms
                for t in s.terms
            ]
        for c, bands in terms:
            cropped = [B.crop(N) for B, N in zip(bands, trunc.caps)]
            for combo in cartesian(*(B.entries.items() for B in cropped)):
                key = (tuple(lm[0] for lm, _ in combo), tuple(lm[1] for lm, _ in combo))
                value = c
                for _, v in combo:
                    value = value * v
                out[key] = out.get(key, ZERO) + value
    return {k: v for k, v in out.items() if v != 0}


def exact_to_dense(entries: dict, trunc: Truncation) -> np.ndarray:
    out = np.zeros((trunc.size, trunc.size), dtype=complex)
    for (l, m), v in entries.items():
        weight = math.prod(math.sqrt((a + 1) * (b + 1)) for a, b in zip(l, m))
        out[trunc.linearize(l), trunc.linearize(m)] = weight * complex(v)
    return out


# ---- norms and zero verdicts --------------------------------------------------

def _as_operator(A):
    if isinstance(A, np.ndarray):
        return OperatorMatrix(Truncation((A.shape[0],)), A)
    return A


def operator_norm(A, tol: float = 1e-10, maxiter: int = 2000, seed: int = 0) -> float:
    """Largest singular value by power iteration on A^H A.

    Starts from the normalized all-ones vector; restarts once from a seeded random vector
    when the iteration stagnates at zero or fails to converge.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = _as_operator(A)
    if isinstance(A, OperatorMatrix) and not np.all(np.isfinite(A.entries)):
        raise ToeplitzError("operator has non-finite entries")
    size = A.shape[1]
    start = np.ones(size, dtype=complex) / math.sqrt(size)
    best, converged = _power_iteration(A, start, tol, maxiter)
    if best == 0.0 or not converged:
        rng = np.random.default_rng(seed)
        x = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        again, converged = _power_iteration(A, x / np.linalg.norm(x), tol, maxiter)
        if not converged:
            log.warning("power iteration did not reach tol=%g after %d steps", tol, maxiter)
        best = max(best, again)
    return best


def _power_iteration(A, x: np.ndarray, tol: float, maxiter: int) -> tuple[float, bool]:
    sigma = 0.0
    for _ in range(maxiter):
        y = A.matvec(x)
        new_sigma = float(np.linalg.norm(y))
        if not math.isfinite(new_sigma):
            raise ToeplitzError("power iteration diverged")
        if new_sigma == 0.0:
            return 0.0, True
        z = A.rmatvec(y)
        znorm = float(np.linalg.norm(z))
        if znorm == 0.0:
            return new_sigma, True
        x = z / znorm
        if abs(new_sigma - sigma) <= tol * new_sigma:
            return new_sigma, True
        sigma = new_sigma
    return sigma, False


class ZeroVerdict(str, enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ZeroEvidence:
    verdict: ZeroVerdict
    norm: float
    exact_zero: bool
    pad: int
    required_pad: int
    note: str = ""


def zero_verdict(
    expr: OperatorExpr,
    trunc: Truncation,
    pad: int | None = None,
    tol: float = 1e-8,
    mode: str = "exact",
    qr: int = 64,
) -> ZeroEvidence:
    """ZERO only when every product has a vanishing factor; NONZERO when a norm above tol survives enough padding."""
    need = required_pad(expr)
    pad = default_pad(expr) if pad is None else pad
    if expr.is_structurally_zero():
        return ZeroEvidence(ZeroVerdict.ZERO, 0.0, True, pad, need, "every product has a structurally zero factor")
    exact = exact_compression(expr, trunc, pad) if mode == "exact" else None
    if exact is not None and not exact:
        return ZeroEvidence(
            ZeroVerdict.INCONCLUSIVE, 0.0, True, pad, need, "compression vanishes exactly at this truncation"
        )
    norm = operator_norm(compose_operator(expr, trunc, pad, mode=mode, qr=qr))
    if norm > tol and pad >= need:
        return ZeroEvidence(ZeroVerdict.NONZERO, norm, False, pad, need)
    note = "norm below tolerance" if norm <= tol else f"pad {pad} below required {need}"
    return ZeroEvidence(ZeroVerdict.INCONCLUSIVE, norm, False, pad, need, note)
