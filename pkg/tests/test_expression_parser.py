from fractions import Fraction

import pytest

from src.core.errors import ExpressionParseError
from src.core.exact_fields import cyc_context, ff_context, quad_context, sextic_context
from src.services.expression_parser import parse_element_expression, tokenize

Q5 = cyc_context(5)
z = Q5.generators()["z"]


def parse(text, context=Q5):
    return parse_element_expression(text, context)


def test_tokenize():
    assert tokenize("3z**2 - 1/2") == [
        ("number", "3"), ("name", "z"), ("op", "^"), ("number", "2"),
        ("op", "-"), ("number", "1"), ("op", "/"), ("number", "2"),
    ]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1-z", 1 - z),
        ("1/2+3z^2", Fraction(1, 2) + 3 * z ** 2),
        ("1/2 + 3*z**2", Fraction(1, 2) + 3 * z ** 2),
        ("z^5", Q5.one()),
        ("z^-1", z ** 4),
        ("(1+z)(1-z)", 1 - z ** 2),
        ("2(z+1)", 2 * z + 2),
        ("-z^2", -(z ** 2)),
        ("--z", z),
        ("1.5", Q5.scalar(Fraction(3, 2))),
        ("z/z^2", z ** 4),
    ],
)
def test_cyclotomic_expressions(text, expected):
    assert parse(text) == expected


def test_other_fields():
    sextic = sextic_context()
    assert parse("a^3", sextic) == 2
    assert parse("w^2 + w + 1", sextic).is_zero()
    assert parse("z^2", quad_context(-3)) == -3
    gf4 = ff_context(2, 2)
    assert parse("z^2 + z + 1", gf4).is_zero()


@pytest.mark.parametrize("text", ["", "   ", "x", "1/0", "z^(2)", "(1+z", "z )", "1 $ 2", "z^1.5", "z^"])
def test_parse_errors(text):
    with pytest.raises(ExpressionParseError):
        parse(text)
