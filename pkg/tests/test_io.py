import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aidlab.derivations import derivation_report
from aidlab.families import FAMILY_NAMES, build_family, g56, gn_certificate, gn_family, metabelian_filiform
from aidlab.io import (
    FormatError,
    ReportFile,
    algebra_to_dict,
    certificate_from_dict,
    certificate_to_dict,
    dump_algebra,
    dump_matrix,
    load_algebra,
    loads_algebra,
    matrix_from_list,
)
from aidlab.lie import JacobiError, LieAlgebra
from aidlab.linalg import GF, Matrix
from aidlab.param import verify_certificate

FAMILY_SAMPLES = [
    ("graph", ["4", "1-2", "2-3", "3-4", "1-4"]),
    ("free2", ["3"]),
    ("free3", ["3"]),
    ("metabelian-free", ["4"]),
    ("filiform", ["6"]),
    ("metabelian-filiform", ["7", "-2/3", "5", "1/7"]),
    ("almost-abelian", ["3/2:2", "-1:1"]),
    ("aqr", ["2/3", "-5"]),
    ("triangular", ["3"]),
    ("strict-triangular", ["4"]),
    ("gn", ["2"]),
    ("n3", []),
    ("g53", []),
    ("g56", []),
]


def same_algebra(a, b):
    return (
        a.dim == b.dim
        and a.field == b.field
        and a.structure_constants() == b.structure_constants()
        and a.labels == b.labels
        and a.name == b.name
    )


@pytest.mark.parametrize("name, params", FAMILY_SAMPLES, ids=[n for n, _ in FAMILY_SAMPLES])
def test_family_output_round_trips_exactly(name, params):
    L = build_family(name, params)
    text = dump_algebra(L)
    assert same_algebra(loads_algebra(text), L)
    assert dump_algebra(loads_algebra(text)) == text


def test_every_family_has_a_round_trip_sample():
    assert {n for n, _ in FAMILY_SAMPLES} == set(FAMILY_NAMES)


def test_coefficients_are_strings_not_floats():
    doc = algebra_to_dict(metabelian_filiform(6, ["1/3", "-2"]))
    coeffs = [t["coeff"] for b in doc["brackets"] for t in b["terms"]]
    assert all(isinstance(c, str) for c in coeffs)
    assert "1/3" in coeffs


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_rational_coefficients_round_trip(a, b):
    L = LieAlgebra(4, {(1, 2): {3: a, 4: b}}, check=False)
    back = loads_algebra(dump_algebra(L))
    assert back.structure_constants() == L.structure_constants()


def test_prime_field_round_trip():
    L = LieAlgebra(3, {(1, 2): {3: 4}}, field=GF(7))
    back = loads_algebra(dump_algebra(L))
    assert back.field == GF(7) and back.structure_constants() == L.structure_constants()


def test_syntax_error_reports_line_and_column():
    with pytest.raises(FormatError, match=r"line 2, column"):
        loads_algebra('{"format_version": 1,\n "dim": 3,, }')


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"format_version": 2, "dim": 3}, "format_version"),
        ({"format_version": 1, "dim": -1}, "dim"),
        ({"format_version": 1, "dim": 3, "field": "R"}, "field"),
        ({"format_version": 1, "dim": 3, "brackets": [{"i": 2, "j": 1, "terms": []}]}, "brackets[0]"),
        ({"format_version": 1, "dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "coeff": 0.5}]}]}, "coeff"),
        ({"format_version": 1, "dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 9, "coeff": "1"}]}]}, "terms[0]"),
        ({"format_version": 1, "dim": 3, "labels": ["a"]}, "labels"),
    ],
)
def test_validation_errors_name_the_location(doc, fragment):
    with pytest.raises(FormatError) as info:
        loads_algebra(json.dumps(doc))
    assert fragment in str(info.value)


def test_jacobi_violation_surfaces_on_load():
    doc = algebra_to_dict(g56())
    doc["brackets"].append({"i": 2, "j": 4, "terms": [{"k": 5, "coeff": "1"}]})
    with pytest.raises(JacobiError, match="e1, e2, e3"):
        loads_algebra(json.dumps(doc))


def test_missing_file_is_a_format_error(tmp_path):
    with pytest.raises(FormatError):
        load_algebra(tmp_path / "missing.json")


def test_matrix_round_trip():
    M = Matrix([[1, "2/3"], [0, -4]])
    assert matrix_from_list(json.loads(dump_matrix(M))) == M
    with pytest.raises(FormatError, match="row 2"):
        matrix_from_list([[1, 2], [3]])


def test_certificate_round_trip_still_verifies():
    cert = gn_certificate(2, 1)
    back = certificate_from_dict(json.loads(json.dumps(certificate_to_dict(cert))))
    assert back == cert
    L = gn_family(2)
    from aidlab.families import gn_derivation

    assert verify_certificate(L, gn_derivation(2, 1), back)


def test_report_file_round_trip():
    rf = ReportFile.from_report(derivation_report(g56()))
    back = ReportFile.from_json(rf.to_json())
    assert back == rf
    assert rf.dims == {"inn": 4, "caid": 5, "aid": 5, "der": 8}
    assert rf.generators[0].matrix[4][1] == "1"


def test_report_file_rejects_unknown_fields():
    with pytest.raises(FormatError):
        ReportFile.from_json('{"bogus": 1}')
