# app/bergman/basis.py
"""Orthonormal monomial basis of A^2(D^n) for the normalized volume nu = dV / pi^n.

e_m(z) = prod_j sqrt(m_j + 1) z_j^m_j, K(z, p) = prod_j (1 - z_j conj(p_j))^-2.
Multi-indices are linearized mixed-radix with variable 1 slowest (numpy C order).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundaryPointError, DimensionError, TruncationError

MultiIndex = tuple[int, ...]


def _check_multi_index(m: Iterable[int]) -> MultiIndex:
    m = tuple(int(x) for x in m)
    if not m:
        raise DimensionError("multi-index needs at least one entry")
    if any(x < 0 for x in m):
        raise ValueError(f"multi-index {m} has a negative entry")
    return m


@dataclass(frozen=True)
class Truncation:
    caps: tuple[int, ...]

    def __post_init__(self):
        caps = tuple(int(c) for c in self.caps)
        if not caps:
            raise TruncationError("a truncation needs at least one variable")
        if any(c < 1 for c in caps):
            raise TruncationError(f"truncation caps must be >= 1, got {caps}")
        object.__setattr__(self, "caps", caps)

    @classmethod
    def uniform(cls, n: int, cap: int) -> "Truncation":
        return cls((cap,) * n)

    @property
    def n(self) -> int:
        return len(self.caps)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.caps

    @cached_property
    def size(self) -> int:
        return math.prod(self.caps)

    def padded(self, pad: int) -> "Truncation":
        if pad < 0:
            raise TruncationError("padding must be non-negative")
        return Truncation(tuple(c + pad for c in self.caps))

    def drop(self, k: int) -> "Truncation":
        """The truncation of the remaining variables once slot k (1-based) is removed."""
        if self.n < 2:
            raise DimensionError("cannot drop the only variable")
        return Truncation(self.caps[: k - 1] + self.caps[k:])

    def contains(self, m: Sequence[int]) -> bool:
        return len(m) == self.n and all(0 <= x < c for x, c in zip(m, self.caps))

    def linearize(self, m: Sequence[int]) -> int:
        m = _check_multi_index(m)
        if not self.contains(m):
            raise TruncationError(f"multi-index {m} outside caps {self.caps}")
        return int(np.ravel_multi_index(m, self.caps))

    def delinearize(self, index: int) -> MultiIndex:
        if not 0 <= index < self.size:
            raise TruncationError(f"index {index} outside 0..{self.size - 1}")
        return tuple(int(x) for x in np.unravel_index(index, self.caps))

    def multi_indices(self) -> list[MultiIndex]:
        return list(product(*(range(c) for c in self.caps)))

    def embed_indices(self, larger: "Truncation") -> np.ndarray:
        """Linear indices in `larger` of every multi-index of self, in self's order."""
        if larger.n != self.n or any(c > d for c, d in zip(self.caps, larger.caps)):
            raise TruncationError(f"{self.caps} does not embed in {larger.caps}")
        grids = np.meshgrid(*(np.arange(c) for c in self.caps), indexing="ij")
        return np.ravel_multi_index(tuple(g.ravel() for g in grids), larger.caps)


@dataclass(frozen=True)
class Point:
    coords: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(complex(c) for c in self.coords))
        if not self.coords:
            raise DimensionError("a point needs at least one coordinate")

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_interior(self) -> bool:
        return all(abs(c) < 1 for c in self.coords)

    def boundary_faces(self, tol: float = 1e-12) -> tuple[int, ...]:
        """1-based slots k with |p_k| = 1."""
        return tuple(k for k, c in enumerate(self.coords, start=1) if abs(abs(c) - 1) <= tol)

    def on_boundary(self) -> bool:
        return bool(self.boundary_faces()) and all(abs(c) <= 1 + 1e-12 for c in self.coords)

    def require_interior(self):
        if not self.is_interior():
            raise BoundaryPointError(f"point {self.coords} is not interior to the polydisc")


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    if isinstance(p, (int, float, complex)):
        return Point((p,))
    return Point(tuple(p))


@dataclass(frozen=True)
class CoefVector:
    trunc: Truncation
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size != self.trunc.size:
            raise TruncationError(f"{c.size} coefficients for a truncation of size {self.trunc.size}")
        object.__setattr__(self, "coeffs", c)

    def norm2(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def as_tensor(self) -> np.ndarray:
        return self.coeffs.reshape(self.trunc.shape)


def kernel_coeffs_1d(p: complex, cap: int) -> np.ndarray:
    p = complex(p)
    if abs(p) >= 1:
        raise BoundaryPointError(f"kernel at boundary point {p!r}")
    m = np.arange(cap)
    return (1 - abs(p) ** 2) * np.sqrt(m + 1) * np.conj(p) ** m


def kernel_coeffs(p, trunc: Truncation) -> CoefVector:
    """Coefficients of the normalized kernel k_p: prod_j (1 - |p_j|^2) sqrt(m_j + 1) conj(p_j)^m_j."""
    p = as_point(p)
    if p.n != trunc.n:
        raise DimensionError(f"point in {p.n} variables, truncation in {trunc.n}")
    p.require_interior()
    out = np.ones(1, dtype=complex)
    for pj, cap in zip(p.coords, trunc.caps):
        out = np.kron(out, kernel_coeffs_1d(pj, cap))
    return CoefVector(trunc, out)


def kernel_mass_defect(p, trunc: Truncation) -> float:
    """1 - ||truncated k_p||^2, the kernel mass that escapes the truncation."""
    p = as_point(p)
    p.require_interior()
    kept = 1.0
    for pj, cap in zip(p.coords, trunc.caps):
        kept *= 1.0 - abs(pj) ** (2 * cap) * (1 + cap * (1 - abs(pj) ** 2))
    return float(1.0 - kept)


def eval_kernel(z, p) -> complex:
    z, p = as_point(z), as_point(p)
    if z.n != p.n:
        raise DimensionError("kernel arguments differ in dimension")
    p.require_interior()
    out = 1 + 0j
    for zj, pj in zip(z.coords, p.coords):
        out *= (1 - zj * pj.conjugate()) ** -2
    return out


def inner_product(u: CoefVector, v: CoefVector) -> complex:
    if u.trunc != v.trunc:
        raise TruncationError(f"inner product of truncations {u.trunc.caps} and {v.trunc.caps}")
    return complex(np.vdot(v.coeffs, u.coeffs))


def basis_vector(m: Sequence[int], trunc: Truncation) -> CoefVector:
    out = np.zeros(trunc.size, dtype=complex)
    out[trunc.linearize(m)] = 1.0
    return CoefVector(trunc, out)
