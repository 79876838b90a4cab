from fractions import Fraction

import numpy as np
import pytest

from app.bergman.basis import Truncation
from app.bergman.parser import parse_operator, parse_symbol
from app.bergman.toeplitz import (
    OperatorExpr,
    ScaledBandMatrix,
    ZeroVerdict,
    assemble,
    compose,
    compose_exact,
    compose_operator,
    default_pad,
    exact_compression,
    exact_to_dense,
    kronecker,
    operator_norm,
    required_pad,
    uni_band,
    zero_verdict,
)

CORPUS_1D = [
    "1",
    "z1",
    "conj(z1)",
    "z1^2*conj(z1)",
    "1 - z1*conj(z1)",
    "(1 + i)*z1^3",
    "z1*conj(z1)^2 + 2*z1",
    "3/4 - i*conj(z1)^2",
    "radial(z1; [0,1/2]: 1 - 2*r, [1/2,1]: 0)",
    "radial(z1; [0,1/2]: 0, [1/2,1]: 2*r - 1)",
    "radial(z1; [0,1/3]: 1, [1/3,1]: 3/2 - 3/2*r)*z1",
    "radial(z1; [0,1/2]: r^2, [1/2,1]: 1/4)*conj(z1)^2",
    "(1 - z1*conj(z1))^2",
    "z1^4 + conj(z1)^4",
]
CORPUS_2D = [
    "z1*conj(z2)",
    "(1 - z1*conj(z1))*(1 - z2*conj(z2))",
    "z1^2 + i*conj(z2)",
    "radial(z2; [0,1/2]: 1 - 2*r, [1/2,1]: 0)*z1",
    "radial(z1; [0,1/2]: 1 - 2*r, [1/2,1]: 0) + radial(z2; [0,1/2]: 0, [1/2,1]: 2*r - 1)",
    "z1*z2*conj(z1)",
]


def test_shift_matrix():
    A = assemble(parse_symbol("z1", 1), Truncation((6,))).entries
    for m in range(5):
        assert A[m + 1, m] == pytest.approx(np.sqrt((m + 1) / (m + 2)), abs=1e-15)
    assert np.count_nonzero(A) == 5


def test_identity_and_radial_diagonal(phi):
    np.testing.assert_allclose(assemble(parse_symbol("1", 1), Truncation((5,))).entries, np.eye(5), atol=1e-15)
    band = uni_band(phi.terms[0].factors[0], 51)
    assert band.offsets() == {0}
    for m in range(51):
        assert (m + 1) * band.entries[(m, m)] == Fraction(1, 4 ** (m + 1) * (2 * m + 3))


def test_compose_exact_with_identity():
    B = uni_band(parse_symbol("z1^2*conj(z1)", 1).terms[0].factors[0], 7)
    assert compose_exact(ScaledBandMatrix.identity(7), B) == B


@pytest.mark.parametrize("text", CORPUS_1D)
def test_exact_and_quadrature_assembly_agree_in_one_variable(text):
    f = parse_symbol(text, 1)
    t = Truncation((16,))
    exact = assemble(f, t, "exact").entries
    quad = assemble(f, t, "quadrature", qr=64).entries
    np.testing.assert_allclose(quad, exact, rtol=0, atol=1e-10)


@pytest.mark.parametrize("text", CORPUS_2D)
def test_exact_and_quadrature_assembly_agree_on_the_bidisc(text):
    f = parse_symbol(text, 2)
    t = Truncation((16, 16))
    np.testing.assert_allclose(
        assemble(f, t, "quadrature", qr=64).entries, assemble(f, t, "exact").entries, rtol=0, atol=1e-10
    )


def test_real_symbols_give_hermitian_matrices(phi):
    assert assemble(phi, Truncation((12,))).is_hermitian()
    assert assemble(parse_symbol("z1 + conj(z1)", 1), Truncation((12,)), "quadrature").is_hermitian(1e-13)
    assert not assemble(parse_symbol("z1", 1), Truncation((4,))).is_hermitian()


def test_kronecker_matches_tensor_assembly():
    A = assemble(parse_symbol("z1*z2", 2), Truncation((4, 3)))
    B = kronecker(assemble(parse_symbol("z1", 1), Truncation((4,))), assemble(parse_symbol("z1", 1), Truncation((3,))))
    np.testing.assert_allclose(A.entries, B.entries, atol=1e-15)


def test_padding_changes_the_corner_entry():
    z = parse_symbol("z1", 1)
    expr = OperatorExpr.product_of(z.conj(), z)
    t = Truncation((8,))
    assert compose(expr, t, pad=0).entries[7, 7] == 0
    assert compose(expr, t, pad=1).entries[7, 7] == pytest.approx(8 / 9, abs=1e-15)
    reference = compose(expr, Truncation((32,)), pad=0).entries[7, 7]
    assert compose(expr, t, pad=8).entries[7, 7] == pytest.approx(reference, abs=1e-15)
    # the other order only reaches index l - 1
    other = OperatorExpr.product_of(z, z.conj())
    assert compose(other, t, pad=0).entries[7, 7] == pytest.approx(7 / 8, abs=1e-15)


def test_factored_composition_matches_dense():
    expr = parse_operator("T(z1*conj(z2))*T(conj(z1) + z2^2) + 2*T(1 - z1*conj(z1))", 2)
    t = Truncation((5, 4))
    dense = compose(expr, t, pad=2).entries
    np.testing.assert_allclose(compose_operator(expr, t, pad=2).to_dense(), dense, atol=1e-14)
    exact = exact_compression(expr, t, pad=2)
    np.testing.assert_allclose(exact_to_dense(exact, t), dense, atol=1e-14)


def test_factored_matvec_matches_dense():
    expr = parse_operator("T(z1 + conj(z2))*T(z1*conj(z1)*z2)", 2)
    t = Truncation((6, 5))
    A = compose_operator(expr, t)
    x = np.random.default_rng(0).standard_normal(t.size) + 0j
    np.testing.assert_allclose(A.matvec(x), A.to_dense() @ x, atol=1e-13)
    np.testing.assert_allclose(A.rmatvec(x), A.to_dense().conj().T @ x, atol=1e-13)


def test_pads():
    expr = parse_operator("T(conj(z1))*T(z1^2)", 1)
    assert required_pad(expr) == 2
    assert default_pad(expr) == 3
    assert required_pad(parse_operator("T(z1^2)*T(z2^40)", 2)) == 16


def test_operator_norms(phi, psi):
    assert operator_norm(assemble(phi, Truncation((16,)))) == pytest.approx(1 / 12, rel=1e-8)
    assert operator_norm(np.zeros((3, 3))) == 0.0
    assert operator_norm(np.diag([1.0, -3.0, 2.0])) == pytest.approx(3.0, rel=1e-8)
    for cap in (16, 32):
        norm = operator_norm(compose_operator(OperatorExpr.product_of(phi, psi), Truncation((cap,)), 0))
        assert norm >= 5 / 144 - 1e-12
        assert norm == pytest.approx(5 / 144, rel=1e-8)


def test_zero_verdicts(phi, psi):
    z = parse_symbol("z1", 1)
    t = Truncation((8,))
    assert zero_verdict(OperatorExpr.product_of(phi * psi, z), t).verdict == ZeroVerdict.ZERO
    short = zero_verdict(OperatorExpr.product_of(z.conj(), z), t, pad=0)
    assert short.verdict == ZeroVerdict.INCONCLUSIVE
    assert short.required_pad == 1
    assert zero_verdict(OperatorExpr.product_of(z.conj(), z), t, pad=1).verdict == ZeroVerdict.NONZERO
    assert zero_verdict(OperatorExpr.single(z), t).verdict == ZeroVerdict.NONZERO


def test_operator_algebra():
    a = parse_operator("T(z1) + T(z2)", 2)
    b = parse_operator("T(conj(z1))", 2)
    assert len((a * b).products) == 2
    assert a.scaled(2).products[0][0] == parse_symbol("2*z1", 2)
    assert parse_operator("T(z1)*T(0)", 1).is_structurally_zero()
    assert (a * b).symbol_sum() == parse_symbol("z1*conj(z1) + z2*conj(z1)", 2)
