# app/bergman/scalars.py
"""Exact Gaussian rationals mixed with float complex.

Symbol coefficients are ``QQi`` while every ingredient is rational, and fall back to
``complex`` as soon as a float (a sampled unimodular xi, a user float) enters.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


@dataclass(frozen=True, slots=True)
class QQi:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(value) -> "QQi | None":
        if isinstance(value, QQi):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return QQi(Fraction(value))
        return None

    # --- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = QQi.coerce(other)
        if o is None:
            return complex(self) + complex(other)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = QQi.coerce(other)
        if o is None:
            return complex(self) * complex(other)
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi.coerce(other)
        if o is None:
            return complex(self) / complex(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("QQi division by zero")
        return self * QQi(o.re / den, -o.im / den)

    def __rtruediv__(self, other):
        o = QQi.coerce(other)
        if o is None:
            return complex(other) / complex(self)
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QQi(Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # --- comparisons / conversion ----------------------------------------
    def __eq__(self, other):
        o = QQi.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"


Scalar = Union[QQi, complex]

ONE = QQi(Fraction(1))
ZERO = QQi(Fraction(0))
I = QQi(Fraction(0), Fraction(1))


def as_scalar(value) -> Scalar:
    """int / Fraction / QQi stay exact; anything numeric else becomes complex."""
    exact = QQi.coerce(value)
    if exact is not None:
        return exact
    return complex(value)


def is_exact(value) -> bool:
    return isinstance(value, QQi)


def is_zero(value) -> bool:
    return value == 0


def to_complex(value) -> complex:
    return complex(value)


def is_unimodular(xi, tol: float = 1e-12) -> bool:
    if isinstance(xi, QQi):
        return xi.abs2() == 1
    return abs(abs(complex(xi)) - 1.0) <= tol


def unimodular_power(xi: Scalar, d: int) -> Scalar:
    """xi**d for |xi| = 1, negative d through the conjugate; d = 0 is exactly 1."""
    if d == 0:
        return ONE
    if isinstance(xi, QQi):
        return xi ** d if d > 0 else xi.conjugate() ** (-d)
    z = complex(xi)
    return z ** d if d > 0 else z.conjugate() ** (-d)


_EXACT_ROOTS = {0: ONE, 1: I, 2: -ONE, 3: -I}


def unit_roots(count: int) -> list[Scalar]:
    """Equispaced unimodular points exp(2 pi i k / count); 1, i, -1, -i are exact."""
    if count < 1:
        raise ValueError("count must be positive")
    out: list[Scalar] = []
    for k in range(count):
        quarter, rem = divmod(4 * k, count)
        if rem == 0:
            out.append(_EXACT_ROOTS[quarter % 4])
        else:
            out.append(cmath.exp(2j * math.pi * k / count))
    return out


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
