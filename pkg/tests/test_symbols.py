import random
from fractions import Fraction

import numpy as np
import pytest

from app.bergman.errors import DimensionError, ToeplitzError
from app.bergman.parser import parse_symbol
from app.bergman.radial import PiecewiseRadial
from app.bergman.scalars import I, ONE, QQi
from app.bergman.symbols import (
    SymbolExpr,
    boundary_face_max,
    disc_grid_max,
    extend,
    restrict,
    vanishes_on_circle_sampled,
)


def random_factor(rng: random.Random, n: int, j: int) -> SymbolExpr:
    z = SymbolExpr.coordinate(n, j)
    out = SymbolExpr.constant(n, 1)
    for _ in range(rng.randint(0, 2)):
        out = out * z
    for _ in range(rng.randint(0, 2)):
        out = out * z.conj()
    if rng.random() < 0.5:
        cut = Fraction(rng.randint(1, 4), 5)
        rho = PiecewiseRadial.from_pieces(
            [
                (0, cut, [rng.randint(-3, 3), rng.randint(-3, 3)]),
                (cut, 1, [rng.randint(-3, 3), 0, Fraction(rng.randint(-3, 3), 2)]),
            ]
        )
        out = out * SymbolExpr.radial(n, j, rho)
    return out


def random_symbol(rng: random.Random, n: int = 2) -> SymbolExpr:
    """Sums of tensor products of monomials and piecewise radial factors."""
    total = SymbolExpr.constant(n, 0)
    for _ in range(rng.randint(1, 3)):
        c = QQi(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-3, 3), rng.randint(1, 4)))
        term = SymbolExpr.constant(n, c)
        for j in range(1, n + 1):
            term = term * random_factor(rng, n, j)
        total = total + term
    return total


def random_points(rng: random.Random, n: int, count: int = 16) -> np.ndarray:
    r = np.array([[rng.uniform(0, 0.95) for _ in range(n)] for _ in range(count)])
    theta = np.array([[rng.uniform(0, 2 * np.pi) for _ in range(n)] for _ in range(count)])
    return r * np.exp(1j * theta)


def test_evaluation_on_the_closed_polydisc():
    s = parse_symbol("1 - z1*conj(z1)", 1)
    assert s(0.5) == pytest.approx(0.75)
    assert s(1j) == pytest.approx(0)
    with pytest.raises(ToeplitzError):
        s(1.5)


def test_piecewise_profiles(phi, psi):
    assert phi(0.25) == pytest.approx(0.5)
    assert phi(0.75) == pytest.approx(0)
    assert psi(0.75j) == pytest.approx(0.5)
    assert psi(0.9) == pytest.approx(0.8)
    assert phi.is_boundary_continuous() and psi.is_boundary_continuous()


def test_canonical_storage_merges_and_cancels():
    z = SymbolExpr.coordinate(1, 1)
    assert (z - z).is_structurally_zero()
    # |z|^2 is stored as a radial profile with no angular part
    s = z * z.conj()
    (term,) = s.terms
    assert (term.factors[0].a, term.factors[0].b) == (0, 0)
    assert term.factors[0].radial == PiecewiseRadial.r2k(1)
    assert parse_symbol("z1*conj(z1) + 1", 1) == parse_symbol("1 + conj(z1)*z1", 1)


def test_products_of_disjoint_radials_vanish_structurally(phi, psi):
    assert (phi * psi).is_structurally_zero()
    assert disc_grid_max(phi * psi) < 1e-15


def test_restriction_to_a_face():
    s = parse_symbol("(1 - z1*conj(z1))*(1 - z2*conj(z2))", 2)
    assert restrict(s, 1, complex(0.6, 0.8)).is_structurally_zero()
    assert restrict(s, 2, I).is_structurally_zero()
    t = parse_symbol("z1*conj(z2) + z2", 2)
    r = restrict(t, 1, I)
    assert r.n == 1
    assert r(0.5) == pytest.approx(1j * 0.5 + 0.5)
    with pytest.raises(ToeplitzError):
        restrict(t, 1, 0.5)
    with pytest.raises(DimensionError):
        restrict(parse_symbol("z1", 1), 1, ONE)


def test_restriction_keeps_exact_coefficients_for_radial_factors():
    s = parse_symbol("z2*(1 + z1*conj(z1))", 2)
    r = restrict(s, 1, complex(0.28, 0.96))
    assert r.is_exact()
    assert r == parse_symbol("2*z1", 1)


def test_extend_then_restrict_is_identity():
    s = parse_symbol("z1^2*conj(z1) + 3", 1)
    assert restrict(extend(s, 2), 2, I) == s
    assert extend(s, 1).depends_on(2)
    assert not extend(s, 1).depends_on(1)


def test_continuity_warning_names_variable_and_breakpoint():
    bad = parse_symbol("radial(z2; [0,3/5]: 1 - 2*r, [3/5,1]: 0)", 2)
    (msg,) = bad.continuity_warnings()
    assert "z2" in msg and "3/5" in msg
    assert not bad.is_boundary_continuous()


def test_factor_tensor():
    s = parse_symbol("(1 - z1*conj(z1))*(2 + z2)", 2)
    f1, f2 = s.factor_tensor()
    assert extend(f1, 2) * extend(f2, 1) == s
    assert parse_symbol("z1 + z2", 2).factor_tensor() is None


def test_angular_degree_and_shift():
    s = parse_symbol("z1^3*conj(z1) + conj(z2)^2", 2)
    assert s.angular_degree(1) == 2
    assert s.angular_degree(2) == 2
    assert s.max_shift() == 2


def test_circle_sampling_and_face_maxima(phi, psi):
    assert vanishes_on_circle_sampled(phi)
    assert not vanishes_on_circle_sampled(psi)
    f = parse_symbol("z1*(1 - z2*conj(z2))", 2)
    assert boundary_face_max(f, 2) < 1e-12
    assert boundary_face_max(f, 1) == pytest.approx(1.0)


def test_radial_exact_values(phi):
    ((_, rho),) = phi.radials()
    assert rho.value_exact(Fraction(1, 4)) == Fraction(1, 2)
    assert rho.at_one() == 0
    assert rho.breakpoints == (0, Fraction(1, 2), 1)
    assert isinstance(phi.terms[0].coef, QQi)


@pytest.mark.parametrize("n", [1, 2])
def test_algebra_commutes_with_evaluation(n):
    rng = random.Random(7 + n)
    for _ in range(25):
        s, t = random_symbol(rng, n), random_symbol(rng, n)
        pts = random_points(rng, n)
        fs, ft = s.eval_many(pts), t.eval_many(pts)
        np.testing.assert_allclose((s + t).eval_many(pts), fs + ft, rtol=1e-10, atol=1e-8)
        np.testing.assert_allclose((s - t).eval_many(pts), fs - ft, rtol=1e-10, atol=1e-8)
        np.testing.assert_allclose((s * t).eval_many(pts), fs * ft, rtol=1e-10, atol=1e-8)
        np.testing.assert_allclose(s.conj().eval_many(pts), np.conj(fs), rtol=1e-10, atol=1e-8)
