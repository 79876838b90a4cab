# app/bergman/radial.py
"""Piecewise-polynomial radial profiles rho(r) on [0, 1] with rational data.

Coefficient tuples are ascending in powers of r: (c0, c1, c2) is c0 + c1 r + c2 r^2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Coeffs = tuple[Fraction, ...]


# ---- univariate rational polynomials --------------------------------------

def poly_strip(c: Sequence) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x + y)
    return poly_strip(out)


def poly_scale(a: Sequence, s) -> tuple:
    return poly_strip([x * s for x in a])


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return poly_strip(out)


def poly_eval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_divide_by_t_minus_one(a: Sequence) -> tuple[tuple, object]:
    """Synthetic division: a(t) = (t - 1) q(t) + remainder."""
    if not a:
        return (), 0
    n = len(a) - 1
    q = [0] * n
    carry = 0
    for i in range(n, 0, -1):
        carry = a[i] + carry
        q[i - 1] = carry
    remainder = a[0] + carry
    return poly_strip(q), remainder


def _frac_coeffs(coeffs: Iterable) -> Coeffs:
    return tuple(Fraction(c) for c in poly_strip([Fraction(c) for c in coeffs]))


# ---- piecewise profiles ----------------------------------------------------

@dataclass(frozen=True)
class RadialPiece:
    lo: Fraction
    hi: Fraction
    coeffs: Coeffs

    def value(self, r):
        return poly_eval(self.coeffs, r)


@dataclass(frozen=True)
class PiecewiseRadial:
    pieces: tuple[RadialPiece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("a radial profile needs at least one piece")
        if self.pieces[0].lo != 0 or self.pieces[-1].hi != 1:
            raise ValueError("radial pieces must cover [0, 1]")
        for left, right in zip(self.pieces, self.pieces[1:]):
            if left.hi != right.lo:
                raise ValueError(f"radial pieces leave a gap or overlap at {left.hi}")
        for p in self.pieces:
            if not p.lo < p.hi:
                raise ValueError(f"empty radial piece [{p.lo}, {p.hi}]")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_pieces(cls, pieces: Iterable[tuple]) -> "PiecewiseRadial":
        built = [RadialPiece(Fraction(lo), Fraction(hi), _frac_coeffs(c)) for lo, hi, c in pieces]
        return cls(tuple(built)).canonical()

    @classmethod
    def polynomial(cls, coeffs: Iterable) -> "PiecewiseRadial":
        return cls((RadialPiece(Fraction(0), Fraction(1), _frac_coeffs(coeffs)),))

    @classmethod
    def constant(cls, c=1) -> "PiecewiseRadial":
        return cls.polynomial([c])

    @classmethod
    def r2k(cls, k: int) -> "PiecewiseRadial":
        return cls.polynomial([0] * (2 * k) + [1])

    # -- structure --------------------------------------------------------
    def canonical(self) -> "PiecewiseRadial":
        merged: list[RadialPiece] = []
        for p in self.pieces:
            p = RadialPiece(p.lo, p.hi, _frac_coeffs(p.coeffs))
            if merged and merged[-1].coeffs == p.coeffs:
                merged[-1] = RadialPiece(merged[-1].lo, p.hi, p.coeffs)
            else:
                merged.append(p)
        return PiecewiseRadial(tuple(merged))

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return tuple(p.lo for p in self.pieces) + (Fraction(1),)

    @property
    def degree(self) -> int:
        return max((len(p.coeffs) - 1 for p in self.pieces), default=0)

    def is_zero(self) -> bool:
        return all(not p.coeffs for p in self.pieces)

    def is_constant(self) -> bool:
        return len(self.pieces) == 1 and len(self.pieces[0].coeffs) <= 1

    def is_polynomial(self) -> bool:
        return len(self.pieces) == 1

    def even_polynomial_in_r(self) -> tuple[Fraction, ...] | None:
        """Coefficients in t = r^2 when rho is a single even polynomial, else None."""
        if not self.is_polynomial():
            return None
        c = self.pieces[0].coeffs
        if any(x != 0 for x in c[1::2]):
            return None
        return tuple(c[0::2])

    def leading_coefficient(self) -> Fraction:
        for p in self.pieces:
            for c in p.coeffs:
                if c != 0:
                    return c
        return Fraction(0)

    def continuity_defects(self) -> list[tuple[Fraction, Fraction]]:
        """(breakpoint, jump) for every interior breakpoint where the pieces disagree."""
        out = []
        for left, right in zip(self.pieces, self.pieces[1:]):
            jump = right.value(right.lo) - left.value(left.hi)
            if jump != 0:
                out.append((left.hi, jump))
        return out

    def is_continuous(self) -> bool:
        return not self.continuity_defects()

    # -- evaluation -------------------------------------------------------
    def value_exact(self, r: Fraction) -> Fraction:
        r = Fraction(r)
        for p in self.pieces:
            if r <= p.hi:
                return p.value(r)
        return self.pieces[-1].value(r)

    def at_one(self) -> Fraction:
        return self.pieces[-1].value(Fraction(1))

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros(r.shape, dtype=float)
        assigned = np.zeros(r.shape, dtype=bool)
        for p in self.pieces:
            mask = (r <= float(p.hi)) & ~assigned
            if p.coeffs:
                coeffs = np.array([float(c) for c in reversed(p.coeffs)])
                out[mask] = np.polyval(coeffs, r[mask])
            assigned |= mask
        rest = ~assigned
        if rest.any():
            last = self.pieces[-1].coeffs
            if last:
                out[rest] = np.polyval(np.array([float(c) for c in reversed(last)]), r[rest])
        return out

    # -- algebra ----------------------------------------------------------
    def _refine(self, other: "PiecewiseRadial"):
        cuts = sorted(set(self.breakpoints) | set(other.breakpoints))
        for lo, hi in zip(cuts, cuts[1:]):
            mid = (lo + hi) / 2
            yield lo, hi, self._piece_at(mid).coeffs, other._piece_at(mid).coeffs

    def _piece_at(self, r: Fraction) -> RadialPiece:
        for p in self.pieces:
            if p.lo <= r <= p.hi:
                return p
        return self.pieces[-1]

    def __add__(self, other: "PiecewiseRadial") -> "PiecewiseRadial":
        return PiecewiseRadial.from_pieces(
            (lo, hi, poly_add(a, b)) for lo, hi, a, b in self._refine(other)
        )

    def __mul__(self, other: "PiecewiseRadial") -> "PiecewiseRadial":
        return PiecewiseRadial.from_pieces(
            (lo, hi, poly_mul(a, b)) for lo, hi, a, b in self._refine(other)
        )

    def scaled(self, s: Fraction) -> "PiecewiseRadial":
        return PiecewiseRadial.from_pieces((p.lo, p.hi, poly_scale(p.coeffs, Fraction(s))) for p in self.pieces)

    def times_r2k(self, k: int) -> "PiecewiseRadial":
        if k == 0:
            return self
        shift = (Fraction(0),) * (2 * k)
        return PiecewiseRadial.from_pieces(
            (p.lo, p.hi, (shift + p.coeffs) if p.coeffs else ()) for p in self.pieces
        )

    @cached_property
    def text(self) -> str:
        from .scalars import format_rational

        def poly_text(c: Coeffs) -> str:
            if not c:
                return "0"
            parts = []
            for i, x in enumerate(c):
                if x == 0:
                    continue
                mono = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
                mag = format_rational(abs(x))
                body = mag if not mono else (mono if abs(x) == 1 else f"{mag}*{mono}")
                parts.append(("-" if x < 0 else "+", body))
            head_sign, head = parts[0]
            out = ("-" if head_sign == "-" else "") + head
            for sign, body in parts[1:]:
                out += f" {sign} {body}"
            return out

        return ", ".join(
            f"[{format_rational(p.lo)},{format_rational(p.hi)}]: {poly_text(p.coeffs)}" for p in self.pieces
        )
