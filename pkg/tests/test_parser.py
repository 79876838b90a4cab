from fractions import Fraction

import pytest

from app.bergman.errors import SymbolSyntaxError
from app.bergman.parser import (
    infer_dimension,
    iter_symbol_texts,
    parse_operator,
    parse_symbol,
    serialize_operator,
    serialize_symbol,
    tokenize,
)
from app.bergman.scalars import QQi

CORPUS = [
    "0",
    "1",
    "-3/4",
    "i*z1",
    "z1^2*conj(z1)",
    "(1 + i)*z1^3 - 2*conj(z1)",
    "1 - z1*conj(z1)",
    "(1 - z1*conj(z1))^2",
    "radial(z1; [0,1/2]: 1 - 2*r, [1/2,1]: 0)",
    "radial(z1; [0,1/2]: 0, [1/2,1]: 2*r - 1)",
    "radial(z1; [0,1/3]: r^2, [1/3,1]: 1/9)*conj(z1)^2",
    "z1*conj(z2) + 0.25*z2^2",
    "(1 - z1*conj(z1))*(1 - z2*conj(z2))",
    "radial(z2; [0,1/2]: 1 - 2*r, [1/2,1]: 0)*z1 + radial(z1; [0,1/2]: 0, [1/2,1]: 2*r - 1)",
    "z3 - i*conj(z1)*z2",
]


@pytest.mark.parametrize("text", CORPUS)
def test_symbols_survive_serialization(text):
    s = parse_symbol(text)
    again = parse_symbol(serialize_symbol(s), s.n)
    assert again == s
    assert serialize_symbol(again) == serialize_symbol(s)


def test_numbers_are_exact():
    assert parse_symbol("0.25") == parse_symbol("1/4")
    assert parse_symbol("1.5e1*z1") == parse_symbol("15*z1")
    assert parse_symbol("2*i*i").terms[0].coef == QQi(-2)


def test_dimension_is_inferred_or_given():
    assert infer_dimension("1 + i") == 1
    assert infer_dimension("z1 + conj(z3)") == 3
    assert parse_symbol("z1", 3).n == 3
    assert parse_symbol("z1 + conj(z3)").n == 3


@pytest.mark.parametrize(
    "text,offset",
    [
        ("1 + * z1", 4),
        ("z1 + *", 5),
        ("z1\u00a0+ *", 6),
        ("z1 + $", 5),
        ("conj(z1", 7),
        ("z1^-1", 3),
        ("z1 z2", 3),
    ],
)
def test_error_offsets_count_bytes(text, offset):
    with pytest.raises(SymbolSyntaxError) as info:
        parse_symbol(text)
    assert info.value.offset == offset


def test_division_only_by_nonzero_constants():
    assert parse_symbol("z1/2") == parse_symbol("1/2*z1")
    assert parse_symbol("z1/(1 + i)") == parse_symbol("(1/2 - 1/2*i)*z1")
    for text, offset in (("z1/z2", 2), ("z1/0", 2), ("z1/(1 - 1)", 2)):
        with pytest.raises(SymbolSyntaxError) as info:
            parse_symbol(text)
        assert info.value.offset == offset


def test_coordinates_and_names():
    with pytest.raises(SymbolSyntaxError, match="outside z1..z2"):
        parse_symbol("z1 + z3", 2)
    with pytest.raises(SymbolSyntaxError, match="unknown name"):
        parse_symbol("w + 1")
    with pytest.raises(SymbolSyntaxError, match="outside"):
        parse_symbol("z0")


def test_radial_profiles_must_cover_the_interval():
    with pytest.raises(SymbolSyntaxError, match="gap") as info:
        parse_symbol("1 + radial(z1; [0,1/3]: 1, [1/2,1]: 0)")
    assert info.value.offset == 4
    with pytest.raises(SymbolSyntaxError, match="cover"):
        parse_symbol("radial(z1; [0,1/2]: 1)")
    # a jump is allowed; it only makes the symbol discontinuous
    jump = parse_symbol("radial(z1; [0,1/2]: 1, [1/2,1]: 0)")
    assert jump.continuity_warnings()


def test_tokens_carry_offsets():
    toks = tokenize("conj(z1)^2")
    assert [(t.kind, t.text, t.offset) for t in toks] == [
        ("name", "conj", 0),
        ("op", "(", 4),
        ("name", "z1", 5),
        ("op", ")", 7),
        ("op", "^", 8),
        ("num", "2", 9),
        ("end", "", 10),
    ]


def test_operator_expressions():
    expr = parse_operator("2*T(z1) - 1/2*T(conj(z1))*T(z1)")
    assert expr.n == 1
    assert len(expr.products) == 2
    assert expr.products[0] == (parse_symbol("2*z1"),)
    assert expr.products[1] == (parse_symbol("-1/2*conj(z1)"), parse_symbol("z1"))
    assert list(iter_symbol_texts(expr)) == [s.text for s in expr.symbols()]
    again = parse_operator(serialize_operator(expr), 1)
    assert again.products == expr.products


def test_operator_dimension_and_zero():
    expr = parse_operator("T(z1)*T(conj(z2)) + T(1)")
    assert expr.n == 2
    assert expr.products[1][0] == parse_symbol("1", 2)
    assert parse_operator("0*T(z1)").is_structurally_zero()
    with pytest.raises(SymbolSyntaxError):
        parse_operator("T(z1) T(z1)")
    with pytest.raises(SymbolSyntaxError):
        parse_operator("S(z1)")


def test_serialized_text_is_stable():
    assert serialize_symbol(parse_symbol("conj(z1)*3 + z1")) == "3*conj(z1) + z1"
    assert serialize_symbol(parse_symbol("z1 - z1")) == "0"
    assert serialize_operator(parse_operator("T(z1)*T(2)")) == "T(z1)*T(2)"
    assert Fraction(3, 4) == parse_symbol("3/4").terms[0].coef.re
