import json
from fractions import Fraction

from app.bergman.basis import Truncation, basis_vector
from app.bergman.berezin import DecayPoint, DecayProfile
from app.bergman.export import (
    berezin_csv,
    coef_vector_csv,
    decay_csv,
    matrix_csv,
    spectrum_csv,
    to_json,
)
from app.bergman.parser import parse_symbol
from app.bergman.reports import ClaimCheck
from app.bergman.toeplitz import OperatorExpr, assemble, compose, exact_compression


def test_spectrum_csv():
    assert spectrum_csv([Fraction(1, 12), Fraction(1, 80)]) == (
        "m,numerator,denominator,value\n0,1,12,0.08333333333333333\n1,1,80,0.0125\n"
    )
    assert spectrum_csv([Fraction(1, 2)], [0.4999]).splitlines()[1] == "0,1,2,0.4999"


def test_coef_vector_csv():
    lines = coef_vector_csv(basis_vector((1, 0), Truncation((2, 2)))).splitlines()
    assert lines[0] == "index,m1,m2,re,im"
    assert lines[3] == "2,1,0,1.0,0.0"
    assert len(lines) == 5


def test_matrix_csv_lists_nonzero_entries():
    z = parse_symbol("z1", 1)
    lines = matrix_csv(assemble(z, Truncation((3,)))).splitlines()
    assert lines[0] == "row,col,re,im"
    assert [line.split(",")[:2] for line in lines[1:]] == [["1", "0"], ["2", "1"]]
    t = Truncation((3,))
    expr = OperatorExpr.single(z)
    exact = exact_compression(expr, t)
    assert matrix_csv(compose(expr, t), exact, t) == "\n".join(lines) + "\n"


def test_decay_csv():
    profile = DecayProfile(
        target=[[1.0, 0.0]],
        caps=[8],
        pad=0,
        points=[DecayPoint(t=0.5, p=[[0.5, 0.0]], abs_bt=0.25, kernel_mass_defect=2e-9, reliable=True)],
    )
    assert decay_csv(profile) == (
        "t,p1_re,p1_im,abs_bt,kernel_mass_defect,reliable\n0.5,0.5,0.0,0.25,2e-09,true\n"
    )


def test_berezin_csv():
    text = berezin_csv([((0.5 + 0j, complex(0, -0.25)), 0.125 + 0j, 0.0)])
    assert text == (
        "p1_re,p1_im,p2_re,p2_im,re,im,kernel_mass_defect\n0.5,0.0,0.0,-0.25,0.125,0.0,0.0\n"
    )
    assert berezin_csv([]) == ""


def test_json_is_sorted_and_stable():
    assert to_json({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    text = to_json(ClaimCheck(claim="φ ok", passed=True))
    assert list(json.loads(text)) == ["claim", "detail", "passed"]
    assert "φ ok" in text
