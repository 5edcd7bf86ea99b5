import json
from fractions import Fraction

import pytest

from src.core.codec import (
    VerificationReport,
    decode_element,
    decode_matrix,
    dumps,
    encode_element,
    encode_matrix,
    format_rational,
    loads_matrix,
    parse_rational,
)
from src.core.errors import CodecError, UnsupportedFieldError
from src.core.exact_fields import cyc_context, ff_context, sextic_context
from src.core.mat_category import Matrix


def test_rationals_travel_as_p_over_q():
    assert format_rational(3) == "3/1"
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert parse_rational("7/3") == Fraction(7, 3)
    assert parse_rational(" 5 ") == 5
    assert parse_rational(-4) == -4


@pytest.mark.parametrize("text", ["x", "1/0", "", "1.5.2"])
def test_bad_rationals(text):
    with pytest.raises(CodecError):
        parse_rational(text)


def test_element_encoding():
    z = cyc_context(5).generators()["z"]
    payload = encode_element(1 - z)
    assert payload == {"field": {"kind": "cyclotomic", "n": 5}, "coords": ["1/1", "-1/1", "0/1", "0/1"]}
    assert decode_element(payload) == 1 - z


def test_matrix_round_trip():
    context = sextic_context()
    alpha, omega = context.generators()["a"], context.generators()["w"]
    M = Matrix(context, [[alpha, omega], [alpha * omega, context.scalar(Fraction(1, 3))]])
    text = dumps(encode_matrix(M))
    assert loads_matrix(text) == M


def test_matrix_entries_are_encoded_as_element_objects():
    z = cyc_context(5).generators()["z"]
    payload = encode_matrix(Matrix(cyc_context(5), [[1 - z, z]]))
    assert payload["entries"][0][0] == encode_element(1 - z)
    assert payload["entries"][0][1] == {"field": {"kind": "cyclotomic", "n": 5}, "coords": ["0/1", "1/1", "0/1", "0/1"]}
    assert decode_matrix(payload) == Matrix(cyc_context(5), [[1 - z, z]])


def test_matrix_entries_may_be_element_objects():
    payload = {
        "rows": 1,
        "cols": 2,
        "field": {"kind": "finite", "p": 3, "m": 2},
        "entries": [[{"field": {"kind": "finite", "p": 3, "m": 2}, "coords": ["1", "2"]}, [0, 1]]],
    }
    M = decode_matrix(payload)
    gf9 = ff_context(3, 2)
    x = gf9.generators()["z"]
    assert M == Matrix(gf9, [[1 + 2 * x, x]])


def test_dumps_is_deterministic():
    assert dumps({"b": 1, "a": "ζ"}) == '{"a": "ζ", "b": 1}'


@pytest.mark.parametrize(
    "payload",
    [
        {"rows": 1, "cols": 1, "field": {"kind": "cyclotomic", "n": 5}, "entries": [[["1", "0"]]]},
        {"rows": 2, "cols": 1, "field": {"kind": "cyclotomic", "n": 5}, "entries": [[["1", "0", "0", "0"]]]},
        {"rows": 1, "cols": 1, "field": {"kind": "cyclotomic"}, "entries": [[["1"]]]},
        {"rows": 1, "cols": 1, "entries": [[["1"]]]},
        {
            "rows": 1,
            "cols": 1,
            "field": {"kind": "quadratic", "d": 5},
            "entries": [[{"field": {"kind": "quadratic", "d": -3}, "coords": ["1", "0"]}]],
        },
    ],
)
def test_invalid_matrix_payloads(payload):
    with pytest.raises(CodecError):
        decode_matrix(payload)


def test_unknown_field_kind():
    with pytest.raises(UnsupportedFieldError):
        decode_matrix({"rows": 1, "cols": 1, "field": {"kind": "padic"}, "entries": [[["1"]]]})


def test_matrix_file_must_be_json():
    with pytest.raises(CodecError):
        loads_matrix("not json")


def test_verification_report():
    report = VerificationReport(suite="join-law", casesRun=4, failures=[], seed=42, elapsedSeconds=0.5)
    assert report.passed
    failing = report.model_copy(update={"failures": [{"case": "x"}]})
    assert not failing.passed
    assert json.loads(report.model_dump_json())["suite"] == "join-law"
