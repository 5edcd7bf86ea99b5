"""Univariate polynomials over ℚ and over GF(p), backed by sympy.

RationalPolynomial keeps a sympy Poly over QQ and hands coefficients back as
Fractions, lowest degree first. GF(p) helpers take plain coefficient lists in
the same order and delegate to sympy's galoistools.
"""
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem, gf_strip

from src.core.errors import ZeroPolynomialError

X = sp.Symbol("x")

Bound = Union[Fraction, int, None]


def to_fraction(value) -> Fraction:
    """sympy number or QQ domain element as a Fraction"""
    if not isinstance(value, sp.Basic):
        value = sp.QQ.to_sympy(value)
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_rational(value) -> sp.Rational:
    q = Fraction(value)
    return sp.Rational(q.numerator, q.denominator)


def to_qq(value):
    q = Fraction(value)
    return sp.QQ(q.numerator, q.denominator)


def _trim(coefficients: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    trimmed = list(coefficients)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    return tuple(trimmed)


class RationalPolynomial:
    """Polynomial with exact rational coefficients"""
    __slots__ = ("poly",)

    def __init__(self, coefficients: Sequence = (), poly: Optional[sp.Poly] = None):
        if poly is None:
            dense = [to_rational(c) for c in reversed(list(coefficients))] or [sp.Integer(0)]
            poly = sp.Poly.from_list(dense, X, domain=sp.QQ)
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> "RationalPolynomial":
        return cls([0] * degree + [coefficient])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "RationalPolynomial":
        product = sp.Poly(1, X, domain=sp.QQ)
        for root in roots:
            product = product * sp.Poly(X - to_rational(root), X, domain=sp.QQ)
        return cls(poly=product)

    @classmethod
    def from_dense(cls, highFirst: Sequence) -> "RationalPolynomial":
        """From QQ domain coefficients, highest degree first"""
        return cls(poly=sp.Poly.from_list([sp.QQ.to_sympy(c) for c in highFirst], X, domain=sp.QQ))

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return _trim(to_fraction(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self) -> int:
        return -1 if self.poly.is_zero else int(self.poly.degree())

    @property
    def leading(self) -> Fraction:
        return to_fraction(self.poly.LC())

    def is_zero(self) -> bool:
        return bool(self.poly.is_zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"RationalPolynomial({self})"

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return RationalPolynomial(poly=self.poly + other.poly)

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(poly=-self.poly)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return RationalPolynomial(poly=self.poly - other.poly)

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return RationalPolynomial(poly=self.poly * other.poly)
        return RationalPolynomial(poly=self.poly * sp.Poly(to_rational(other), X, domain=sp.QQ))

    __rmul__ = __mul__

    def __divmod__(self, divisor: "RationalPolynomial") -> Tuple["RationalPolynomial", "RationalPolynomial"]:
        if divisor.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial")
        quotient, remainder = self.poly.div(divisor.poly)
        return RationalPolynomial(poly=quotient), RationalPolynomial(poly=remainder)

    def __floordiv__(self, divisor: "RationalPolynomial") -> "RationalPolynomial":
        return divmod(self, divisor)[0]

    def __mod__(self, divisor: "RationalPolynomial") -> "RationalPolynomial":
        return divmod(self, divisor)[1]

    def __call__(self, x) -> Fraction:
        return to_fraction(self.poly.eval(to_rational(x)))

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            raise ZeroPolynomialError("the zero polynomial has no monic form")
        return RationalPolynomial(poly=self.poly.monic())

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(poly=self.poly.diff(X))

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        """Monic greatest common divisor (zero only when both inputs are zero)"""
        common = RationalPolynomial(poly=self.poly.gcd(other.poly))
        return common if common.is_zero() else common.monic()

    def squarefree_part(self) -> "RationalPolynomial":
        if self.is_zero():
            raise ZeroPolynomialError("the zero polynomial has no squarefree part")
        if self.degree < 1:
            return self.monic()
        return RationalPolynomial(poly=self.poly.sqf_part()).monic()

    def discriminant(self) -> Fraction:
        if self.degree < 1:
            raise ZeroPolynomialError("discriminant needs degree at least 1")
        return to_fraction(self.poly.discriminant())

    def real_root_count(self) -> int:
        """Number of distinct real roots"""
        return sturm_root_count(self, (None, None))

    def is_totally_real(self) -> bool:
        """True iff every complex root is real"""
        return self.real_root_count() == self.squarefree_part().degree

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        coefficients = self.coefficients
        terms: List[str] = []
        for power in range(len(coefficients) - 1, -1, -1):
            c = coefficients[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                monomial = "x" if power == 1 else f"x^{power}"
                body = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def poly_xgcd(a: RationalPolynomial, b: RationalPolynomial) -> Tuple[RationalPolynomial, RationalPolynomial, RationalPolynomial]:
    """Extended Euclid: returns (g, s, t) with s·a + t·b = g, g monic"""
    s, t, g = a.poly.gcdex(b.poly)
    return RationalPolynomial(poly=g), RationalPolynomial(poly=s), RationalPolynomial(poly=t)


def cyclotomic_polynomial(n: int) -> RationalPolynomial:
    return RationalPolynomial(poly=sp.Poly(sp.cyclotomic_poly(n, X), X, domain=sp.QQ))


def sturm_root_count(f: RationalPolynomial, interval: Tuple[Bound, Bound]) -> int:
    """Distinct real roots of f in the half-open interval (lo, hi].

    None as an endpoint stands for -∞ (lo) or +∞ (hi).
    """
    if f.is_zero():
        raise ZeroPolynomialError("Sturm sequence of the zero polynomial")
    squarefree = f.squarefree_part()
    if squarefree.degree < 1:
        return 0
    lo, hi = interval
    if lo is not None and hi is not None and Fraction(lo) >= Fraction(hi):
        return 0
    inf = None if lo is None else to_rational(lo)
    sup = None if hi is None else to_rational(hi)
    # count_roots works on the closed interval [inf, sup]
    count = int(squarefree.poly.count_roots(inf, sup))
    if inf is not None and squarefree.poly.eval(inf) == 0:
        count -= 1
    return count


# ---------------------------------------------------------
# Polynomials over GF(p) as coefficient lists, lowest degree first
# ---------------------------------------------------------

def _high_first(coefficients: Sequence[int], p: int) -> List[int]:
    return gf_strip([int(c) % p for c in reversed(list(coefficients))])


def _low_first(highFirst: Sequence[int]) -> List[int]:
    return [int(c) for c in reversed(gf_strip(list(highFirst)))]


def gf_multiply(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    return _low_first(gf_mul(_high_first(a, p), _high_first(b, p), p, sp.ZZ))


def gf_remainder(a: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    return _low_first(gf_rem(_high_first(a, p), _high_first(modulus, p), p, sp.ZZ))


def gf_is_irreducible(f: Sequence[int], p: int) -> bool:
    highFirst = _high_first(f, p)
    degree = len(highFirst) - 1
    if degree <= 1:
        return degree == 1
    return bool(gf_irreducible_p(highFirst, p, sp.ZZ))


def gf_least_irreducible(degree: int, p: int) -> Optional[List[int]]:
    """Lexicographically least monic irreducible of the given degree.

    Order compares coefficients from x^{m-1} down to x^0, so over GF(2)
    the quartic choice is x^4 + x + 1.
    """
    for code in range(p ** degree):
        digits = []
        for _ in range(degree):
            digits.append(code % p)
            code //= p
        # the last digit is the most significant, i.e. the x^{m-1} coefficient
        candidate = digits + [1]
        if gf_is_irreducible(candidate, p):
            return candidate
    return None
