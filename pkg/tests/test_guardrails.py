import pytest

from src.services.guardrails import CommandGuardrails


@pytest.fixture
def guardrails():
    return CommandGuardrails()


@pytest.mark.parametrize("spec", ["cyclotomic:7", "quadratic:-3", "finite:2:4", "sextic", "Sextic_S3"])
def test_accepted_field_specs(guardrails, spec):
    assert guardrails.validate_field_spec(spec)["isValid"]


@pytest.mark.parametrize("spec", ["", "cyclotomic", "cyclotomic:-5", "finite:2", "padic:5"])
def test_rejected_field_specs(guardrails, spec):
    result = guardrails.validate_field_spec(spec)
    assert not result["isValid"]
    assert result["reason"]


def test_conductor(guardrails):
    assert guardrails.validate_conductor(12)["isValid"]
    assert not guardrails.validate_conductor(1)["isValid"]
    assert "required" in guardrails.validate_conductor(None)["reason"]


def test_dimension_must_fold_under_max_dim(guardrails):
    assert guardrails.validate_dimension(2, 6)["isValid"]
    assert guardrails.validate_dimension(4, 6)["isValid"]
    assert not guardrails.validate_dimension(5, 6)["isValid"]
    assert not guardrails.validate_dimension(0, 4)["isValid"]


@pytest.mark.parametrize("token, valid", [("3", True), ("F2", True), ("e", True), ("t2s", True), ("s", True),
                                          ("ts", True), ("x", False), ("-1", False), ("t3x", False)])
def test_group_tokens(guardrails, token, valid):
    assert guardrails.validate_group_tokens([token])["isValid"] is valid


def test_expressions(guardrails):
    assert guardrails.validate_expression("1/2 + 3*z^2")["isValid"]
    assert not guardrails.validate_expression("")["isValid"]
    assert not guardrails.validate_expression("z" * 501)["isValid"]
    assert not guardrails.validate_expression("__import__('os')")["isValid"]


@pytest.mark.parametrize("text, valid", [("7/3", True), ("-1", True), (" 5 / 2 ", True), ("1/0", False),
                                         ("z", False), ("1.5", False), ("", False)])
def test_rationals(guardrails, text, valid):
    assert guardrails.validate_rational(text)["isValid"] is valid


def test_search_bounds_and_suites(guardrails):
    assert guardrails.validate_search_bounds(3, 4)["isValid"]
    assert not guardrails.validate_search_bounds(0, 4)["isValid"]
    result = guardrails.validate_suites(["join-law", "bogus"], ["join-law", "norm-laws"])
    assert not result["isValid"]
    assert "bogus" in result["reason"]
    assert guardrails.validate_suites([], ["join-law"])["isValid"]
