import numpy as np
import pytest

from app.bergman.basis import (
    CoefVector,
    Point,
    Truncation,
    basis_vector,
    eval_kernel,
    inner_product,
    kernel_coeffs,
    kernel_mass_defect,
)
from app.bergman.errors import BoundaryPointError, DimensionError, TruncationError


def test_linearize_is_mixed_radix_with_first_variable_slowest():
    t = Truncation((3, 4))
    assert t.size == 12
    assert t.linearize((1, 2)) == 6
    assert t.delinearize(6) == (1, 2)
    assert t.multi_indices()[:5] == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]
    for i in range(t.size):
        assert t.linearize(t.delinearize(i)) == i


def test_truncation_rejects_bad_caps_and_indices():
    with pytest.raises(TruncationError):
        Truncation((0, 3))
    with pytest.raises(TruncationError):
        Truncation((3,)).linearize((3,))
    with pytest.raises(ValueError):
        Truncation((3,)).linearize((-1,))


def test_embed_indices_and_drop():
    small, big = Truncation((2, 2)), Truncation((3, 3))
    assert list(small.embed_indices(big)) == [0, 1, 3, 4]
    assert Truncation((5, 6, 7)).drop(2).caps == (5, 7)
    with pytest.raises(TruncationError):
        big.embed_indices(small)


def test_normalized_kernel_has_unit_norm_up_to_escaped_mass():
    for p, caps in [((0.3,), (200,)), ((0.3, 0.5j), (60, 60)), ((0.7 - 0.2j, 0.1), (40, 30))]:
        t = Truncation(caps)
        k = kernel_coeffs(p, t)
        assert k.norm2() == pytest.approx(1 - kernel_mass_defect(p, t), abs=1e-12)


def test_kernel_coefficients_reproduce_the_kernel():
    p, z = 0.4 + 0.3j, -0.2 + 0.5j
    t = Truncation((200,))
    c = kernel_coeffs((p,), t).coeffs
    m = np.arange(200)
    series = np.sum(c * np.sqrt(m + 1) * z ** m)
    assert series == pytest.approx((1 - abs(p) ** 2) * eval_kernel((z,), (p,)), abs=1e-12)


def test_eval_kernel_closed_form():
    assert eval_kernel((0.5,), (0.5,)) == pytest.approx(1 / 0.75 ** 2)
    assert eval_kernel((0.5, 0.0), (0.5, 0.9)) == pytest.approx(1 / 0.75 ** 2)


def test_boundary_and_dimension_errors():
    with pytest.raises(BoundaryPointError):
        kernel_coeffs((1.0,), Truncation((4,)))
    with pytest.raises(DimensionError):
        kernel_coeffs((0.1, 0.2), Truncation((4,)))
    assert Point((1, 0.5)).on_boundary()
    assert Point((1j, 1)).boundary_faces() == (1, 2)
    assert not Point((0.5, 0.5)).on_boundary()


def test_inner_product_conjugates_the_second_argument():
    t = Truncation((2,))
    u = CoefVector(t, [1j, 0])
    v = CoefVector(t, [1, 0])
    assert inner_product(u, v) == 1j
    assert inner_product(basis_vector((1,), t), basis_vector((1,), t)) == 1
    with pytest.raises(TruncationError):
        inner_product(u, CoefVector(Truncation((3,)), [0, 0, 0]))
