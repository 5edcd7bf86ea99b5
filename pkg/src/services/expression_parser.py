"""Recursive-descent parser for field elements written as polynomial expressions.

Expressions use the generator names of the context ("z" for ζ, √d or the class
of x; "a" and "w" for α and ω), exact rationals, + - * / ^ and parentheses.
A number directly followed by a generator or a parenthesis multiplies it,
so "1/2+3z^2" reads as 1/2 + 3·z².
"""
import logging
import re
from fractions import Fraction
from typing import List, Tuple

from src.core.errors import ExpressionParseError, FieldDivisionByZeroError
from src.core.exact_fields import FieldContext, FieldElement

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = TOKEN_PATTERN.match(stripped, position)
        if not match:
            raise ExpressionParseError(f"unexpected character {stripped[position]!r} at {position} in {text!r}")
        number, name, operator = match.groups()
        if number is not None:
            tokens.append(("number", number))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if operator == "**" else operator))
        position = match.end()
    return tokens


class ElementExpressionParser:
    def __init__(self, context: FieldContext):
        self.context = context
        self.generators = context.generators()
        self.tokens: List[Tuple[str, str]] = []
        self.position = 0

    def parse(self, text: str) -> FieldElement:
        if not text or not text.strip():
            raise ExpressionParseError("empty expression")
        self.tokens = tokenize(text)
        self.position = 0
        value = self._expression()
        if self.position != len(self.tokens):
            raise ExpressionParseError(f"trailing input {self.tokens[self.position][1]!r} in {text!r}")
        return value

    def _peek(self):
        return self.tokens[self.position] if self.position < len(self.tokens) else (None, None)

    def _take(self):
        token = self._peek()
        self.position += 1
        return token

    def _expect(self, symbol: str):
        kind, value = self._take()
        if kind != "op" or value != symbol:
            raise ExpressionParseError(f"expected {symbol!r}, found {value!r}")

    def _expression(self) -> FieldElement:
        value = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            _, operator = self._take()
            right = self._term()
            value = value + right if operator == "+" else value - right
        return value

    def _term(self) -> FieldElement:
        value = self._factor()
        while True:
            kind, token = self._peek()
            if kind == "op" and token in ("*", "/"):
                self._take()
                right = self._factor()
                if token == "*":
                    value = value * right
                else:
                    try:
                        value = value / right
                    except FieldDivisionByZeroError:
                        raise ExpressionParseError("division by zero in expression")
            elif kind in ("name", "number") or (kind == "op" and token == "("):
                value = value * self._power()
            else:
                return value

    def _factor(self) -> FieldElement:
        kind, token = self._peek()
        if kind == "op" and token in ("+", "-"):
            self._take()
            operand = self._factor()
            return -operand if token == "-" else operand
        return self._power()

    def _power(self) -> FieldElement:
        base = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            sign = 1
            if self._peek() in (("op", "-"), ("op", "+")):
                sign = -1 if self._take()[1] == "-" else 1
            kind, token = self._take()
            if kind != "number" or not token.isdigit():
                raise ExpressionParseError(f"exponent must be an integer, found {token!r}")
            try:
                return base ** (sign * int(token))
            except FieldDivisionByZeroError:
                raise ExpressionParseError("negative power of zero")
        return base

    def _atom(self) -> FieldElement:
        kind, token = self._take()
        if kind == "number":
            return self.context.scalar(Fraction(token))
        if kind == "name":
            if token not in self.generators:
                raise ExpressionParseError(
                    f"unknown symbol {token!r}; {self.context} knows {sorted(self.generators)}"
                )
            return self.generators[token]
        if kind == "op" and token == "(":
            value = self._expression()
            self._expect(")")
            return value
        raise ExpressionParseError(f"unexpected token {token!r}")


def parse_element_expression(text: str, context: FieldContext) -> FieldElement:
    return ElementExpressionParser(context).parse(text)
