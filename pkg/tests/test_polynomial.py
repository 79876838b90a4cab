import random
from fractions import Fraction

import numpy as np
import pytest

from app.bergman.errors import NonPolynomialError
from app.bergman.parser import parse_symbol
from app.bergman.polynomial import (
    PolyZZbar,
    canonical_radial_form,
    circle_vanishing,
    divide_by_one_minus_mod2,
    is_n_harmonic,
    laplacian_j,
    serialize_poly,
    symbol_to_poly,
    vanishes_on_face,
)
from app.bergman.scalars import QQi


def poly(text, n=1):
    return symbol_to_poly(parse_symbol(text, n))


def random_poly(rng: random.Random, degree: int = 3) -> PolyZZbar:
    coeffs = {}
    for _ in range(rng.randint(1, 5)):
        a, b = rng.randint(0, degree), rng.randint(0, degree)
        c = QQi(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-3, 3), rng.randint(1, 4)))
        coeffs[((a,), (b,))] = c
    return PolyZZbar(1, coeffs)


def test_laplacian_and_harmonicity():
    assert laplacian_j(poly("z1*conj(z1)"), 1) == PolyZZbar.constant(1, 4)
    assert laplacian_j(poly("z1^2*conj(z1)^3"), 1) == PolyZZbar.monomial(1, [1], [2], 24)
    assert is_n_harmonic(poly("z1*conj(z2) + z2^3", 2))
    assert not is_n_harmonic(poly("z1*conj(z1)*z2", 2))


@pytest.mark.parametrize(
    "text, quotient",
    [
        ("1 - z1*conj(z1)", "1"),
        ("z1 - z1^2*conj(z1)", "z1"),
        ("z1", None),
        ("1 + z1*conj(z1)", None),
        ("(1 - z1*conj(z1))^2*conj(z1)", "conj(z1) - z1*conj(z1)^2"),
    ],
)
def test_division_by_one_minus_mod2(text, quotient):
    q = divide_by_one_minus_mod2(poly(text))
    if quotient is None:
        assert q is None
    else:
        assert serialize_poly(q) == quotient


def test_division_round_trips_random_polynomials():
    rng = random.Random(0)
    factor = PolyZZbar.one_minus_mod2(1, 1)
    for _ in range(100):
        g = random_poly(rng)
        assert divide_by_one_minus_mod2(factor * g) == g


def test_circle_vanishing_agrees_with_sampling():
    rng = random.Random(1)
    factor = PolyZZbar.one_minus_mod2(1, 1)
    corpus = [random_poly(rng) for _ in range(20)]
    corpus += [factor * p for p in corpus[:10]]
    xi = np.exp(2j * np.pi * np.arange(1024) / 1024)
    for p in corpus:
        sampled = float(np.max(np.abs(p.eval_many(xi[:, None])))) < 1e-12
        assert circle_vanishing(p) == sampled


def test_radial_form_reconstructs():
    p = poly("3*z1^2*conj(z1) - conj(z1)^2 + 5 + z1*conj(z1)")
    form = canonical_radial_form(p)
    assert form.reconstruct() == p
    assert set(form.p) == {0, 1}
    assert set(form.q) == {2}


def test_face_vanishing_in_two_variables():
    p = poly("(1 - z1*conj(z1))*z2", 2)
    assert vanishes_on_face(p, 1)
    assert not vanishes_on_face(p, 2)
    q = poly("(1 - z1*conj(z1))*(1 - z2*conj(z2))", 2)
    assert vanishes_on_face(q, 1) and vanishes_on_face(q, 2)


def test_symbol_round_trip_and_refusal(phi):
    p = poly("z1^2*conj(z2) + 3", 2)
    assert PolyZZbar.from_symbol(p.to_symbol()) == p
    assert p(0.5, 1j) == pytest.approx(0.25 * -1j + 3)
    with pytest.raises(NonPolynomialError):
        symbol_to_poly(phi)


def test_serialization():
    assert serialize_poly(PolyZZbar.z(1, 1)) == "z1"
    assert serialize_poly(PolyZZbar.one_minus_mod2(1, 1)) == "1 - z1*conj(z1)"
    assert serialize_poly(PolyZZbar(2)) == "0"
    assert serialize_poly(poly("z1/2 - conj(z2)", 2)) == "-conj(z2) + 1/2*z1"
