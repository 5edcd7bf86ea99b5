"""Exact arithmetic for the supported Galois fields.

Four kinds of field context are available: cyclotomic fields ℚ(ζₙ), quadratic
fields ℚ(√d), finite fields GF(p^m) and the sextic splitting field ℚ(α, ω) of
x³ − 2. Every context exposes its basis, reduction rules and the action of its
Galois group, whose elements are plain hashable labels:

    cyclotomic   unit k mod n, acting as ζ ↦ ζᵏ
    quadratic    0 or 1, acting as √d ↦ ±√d
    finite       Frobenius exponent j, acting as t ↦ t^{p^j}
    sextic       pair (a, b) meaning τᵃσᵇ, with σ: ω ↦ ω², τ: α ↦ αω
"""
import functools
import logging
import math
import random
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import sympy as sp

from src.core.errors import (
    ContextMismatchError,
    FieldDivisionByZeroError,
    InvalidConductorError,
    InvalidDegreeError,
    NotInGroupError,
    NotPrimeError,
    UnsupportedFieldError,
)
from src.core.exact_linalg import characteristic_polynomial, determinant, determinant_mod, solve
from src.core.polynomials import (
    RationalPolynomial,
    cyclotomic_polynomial,
    gf_least_irreducible,
    gf_multiply,
    gf_remainder,
    poly_xgcd,
    sturm_root_count,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
GroupElement = Hashable


# ---------------------------------------------------------
# Elements
# ---------------------------------------------------------

class FieldElement:
    """Immutable coordinate vector over the basis of its context"""
    __slots__ = ("context", "coords", "_hash")

    def __init__(self, context: "FieldContext", coords: Sequence):
        if len(coords) != context.degree:
            raise ValueError(f"expected {context.degree} coordinates, got {len(coords)}")
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "coords", context.normalize(coords))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, context: "FieldContext", coords: tuple) -> "FieldElement":
        element = cls.__new__(cls)
        object.__setattr__(element, "context", context)
        object.__setattr__(element, "coords", coords)
        object.__setattr__(element, "_hash", None)
        return element

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.context != self.context:
                raise ContextMismatchError(f"{self.context} vs {other.context}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.context.wrap(self.context.add(self.coords, other.coords))

    __radd__ = __add__

    def __neg__(self):
        return self.context.wrap(self.context.negate(self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.context.wrap(self.context.multiply(self.coords, other.coords))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise FieldDivisionByZeroError(f"inverse of zero in {self.context}")
        return self.context.wrap(self.context.inverse(self.coords))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.context.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context.scalar(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.context == other.context and self.coords == other.coords

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.context.key, self.coords)))
        return self._hash

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def is_scalar(self) -> bool:
        """True iff the element lies in the prime field"""
        return not any(self.coords[1:])

    def scalar_value(self) -> Scalar:
        if not self.is_scalar():
            raise ValueError(f"{self} is not in the prime field")
        return self.coords[0]

    def __str__(self):
        labels = self.context.basis_labels()
        terms = []
        for c, label in zip(self.coords, labels):
            if c == 0:
                continue
            if label == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(label)
            elif c == -1:
                terms.append(f"-{label}")
            else:
                terms.append(f"{c}*{label}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self):
        return f"{type(self).__name__}({self.context}, {self})"


class CycElem(FieldElement):
    """Element of ℚ(ζₙ) over the power basis ζ⁰..ζ^{φ(n)−1}"""
    __slots__ = ()

    def conjugate(self) -> "CycElem":
        return apply_aut(self, self.context.conductor - 1)


class QuadElem(FieldElement):
    """Element x + y√d"""
    __slots__ = ()

    def conjugate(self) -> "QuadElem":
        return apply_aut(self, 1)


class FFElem(FieldElement):
    """Element of GF(p^m) as residues over 1, x, .., x^{m−1}"""
    __slots__ = ()

    def to_int(self) -> int:
        p = self.context.characteristic
        return sum(c * p ** i for i, c in enumerate(self.coords))

    def frobenius(self, j: int = 1) -> "FFElem":
        return self ** (self.context.characteristic ** j)


class SexticS3Elem(FieldElement):
    """Element of ℚ(α, ω) over {αⁱωʲ}, index 2i + j"""
    __slots__ = ()


# ---------------------------------------------------------
# Contexts
# ---------------------------------------------------------

class FieldContext(ABC):
    kind: str = ""
    degree: int = 1
    characteristic: int = 0
    element_class = FieldElement

    @property
    @abstractmethod
    def key(self) -> tuple:
        """Hashable identity of the field"""

    @abstractmethod
    def spec(self) -> Dict[str, Any]:
        """JSON field description"""

    @abstractmethod
    def multiply(self, a: tuple, b: tuple) -> tuple:
        pass

    @abstractmethod
    def inverse(self, a: tuple) -> tuple:
        pass

    @abstractmethod
    def apply(self, a: tuple, g: GroupElement) -> tuple:
        pass

    @abstractmethod
    def group_elements(self) -> Tuple[GroupElement, ...]:
        """Galois group elements in canonical order, identity first"""

    @abstractmethod
    def group_multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """Composition g∘h"""

    @abstractmethod
    def basis_labels(self) -> List[str]:
        pass

    @abstractmethod
    def generators(self) -> Dict[str, FieldElement]:
        pass

    @abstractmethod
    def conjugation(self) -> Optional[GroupElement]:
        """Group element acting as complex conjugation, if the field has one"""

    @property
    def group_identity(self) -> GroupElement:
        return self.group_elements()[0]

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return ":".join(str(part) for part in self.key)

    # coordinate plumbing shared by the characteristic-0 contexts

    def normalize(self, coords: Sequence) -> tuple:
        return tuple(Fraction(c) for c in coords)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def negate(self, a: tuple) -> tuple:
        return tuple(-x for x in a)

    def wrap(self, coords: tuple) -> FieldElement:
        return self.element_class._raw(self, coords)

    def element(self, coords: Sequence) -> FieldElement:
        return self.element_class(self, coords)

    def scalar(self, value: Scalar) -> FieldElement:
        return self.element([value] + [0] * (self.degree - 1))

    def zero(self) -> FieldElement:
        return self.scalar(0)

    def one(self) -> FieldElement:
        return self.scalar(1)

    def basis(self) -> List[FieldElement]:
        return [self.element([1 if i == j else 0 for i in range(self.degree)]) for j in range(self.degree)]

    def has_group_element(self, g: GroupElement) -> bool:
        return g in self.group_elements()



class CyclotomicContext(FieldContext):
    kind = "cyclotomic"
    element_class = CycElem

    def __init__(self, n: int):
        self.conductor = n
        self.cyclotomic_poly = cyclotomic_polynomial(n)
        self.degree = self.cyclotomic_poly.degree
        # coordinates of ζ^k for k = 0..n−1, reduced mod Φₙ
        table = []
        for k in range(n):
            remainder = RationalPolynomial.monomial(k) % self.cyclotomic_poly
            coords = list(remainder.coefficients) + [Fraction(0)] * (self.degree - len(remainder.coefficients))
            table.append(tuple(coords))
        self._power_table = tuple(table)
        self._units = tuple(k for k in range(1, n) if math.gcd(k, n) == 1) or (1,)

    @property
    def key(self) -> tuple:
        return (self.kind, self.conductor)

    def spec(self) -> Dict[str, Any]:
        return {"kind": self.kind, "n": self.conductor}

    def _fold_exponents(self, exponentCoefficients: Sequence[Fraction]) -> tuple:
        result = [Fraction(0)] * self.degree
        n, table = self.conductor, self._power_table
        for k, c in enumerate(exponentCoefficients):
            if c == 0:
                continue
            row = table[k % n]
            for i, r in enumerate(row):
                if r:
                    result[i] += c * r
        return tuple(result)

    def multiply(self, a: tuple, b: tuple) -> tuple:
        product = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        product[i + j] += x * y
        return self._fold_exponents(product)

    def inverse(self, a: tuple) -> tuple:
        g, s, _ = poly_xgcd(RationalPolynomial(a), self.cyclotomic_poly)
        if g.degree != 0:
            raise FieldDivisionByZeroError("element shares a factor with the cyclotomic polynomial")
        s = s % self.cyclotomic_poly
        return tuple(list(s.coefficients) + [Fraction(0)] * (self.degree - len(s.coefficients)))

    def apply(self, a: tuple, g: GroupElement) -> tuple:
        spread = [Fraction(0)] * self.conductor
        for i, c in enumerate(a):
            if c:
                spread[(i * g) % self.conductor] += c
        return self._fold_exponents(spread)

    def group_elements(self) -> Tuple[GroupElement, ...]:
        return self._units

    def group_multiply(self, g, h):
        return (g * h) % self.conductor if self.conductor > 2 else 1

    def basis_labels(self) -> List[str]:
        return ["1", "z"] + [f"z^{i}" for i in range(2, self.degree)]

    def generators(self) -> Dict[str, FieldElement]:
        return {"z": self.wrap(self._power_table[1 % self.conductor])}

    def conjugation(self) -> Optional[GroupElement]:
        return self.conductor - 1 if self.conductor > 2 else 1


class QuadraticContext(FieldContext):
    kind = "quadratic"
    degree = 2
    element_class = QuadElem

    def __init__(self, d: int):
        self.d = d

    @property
    def key(self) -> tuple:
        return (self.kind, self.d)

    def spec(self) -> Dict[str, Any]:
        return {"kind": self.kind, "d": self.d}

    def multiply(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def inverse(self, a):
        norm = a[0] * a[0] - self.d * a[1] * a[1]
        return (a[0] / norm, -a[1] / norm)

    def apply(self, a, g):
        return a if g == 0 else (a[0], -a[1])

    def group_elements(self):
        return (0, 1)

    def group_multiply(self, g, h):
        return (g + h) % 2

    def basis_labels(self):
        return ["1", "z"]

    def generators(self):
        return {"z": self.wrap((Fraction(0), Fraction(1)))}

    def conjugation(self):
        return 1 if self.d < 0 else 0


class FiniteFieldContext(FieldContext):
    kind = "finite"
    element_class = FFElem

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.characteristic = p
        self.extension_degree = m
        self.degree = m
        self.modulus = tuple(modulus)
        self.order = p ** m

    @property
    def key(self) -> tuple:
        return (self.kind, self.characteristic, self.extension_degree)

    def spec(self) -> Dict[str, Any]:
        return {"kind": self.kind, "p": self.characteristic, "m": self.extension_degree}

    def normalize(self, coords):
        return tuple(_residue(Fraction(c), self.characteristic) for c in coords)

    def add(self, a, b):
        p = self.characteristic
        return tuple((x + y) % p for x, y in zip(a, b))

    def negate(self, a):
        p = self.characteristic
        return tuple((-x) % p for x in a)

    def _pad(self, coefficients: List[int]) -> tuple:
        return tuple(coefficients + [0] * (self.degree - len(coefficients)))

    def multiply(self, a, b):
        p = self.characteristic
        return self._pad(gf_remainder(gf_multiply(a, b, p), self.modulus, p))

    def inverse(self, a):
        return (self.wrap(a) ** (self.order - 2)).coords

    def apply(self, a, g):
        return (self.wrap(a) ** (self.characteristic ** g)).coords

    def group_elements(self):
        return tuple(range(self.extension_degree))

    def group_multiply(self, g, h):
        return (g + h) % self.extension_degree

    def basis_labels(self):
        return ["1", "z"] + [f"z^{i}" for i in range(2, self.degree)]

    def generators(self):
        if self.degree == 1:
            # x ≡ 0 modulo the prime-field modulus x
            return {"z": self.zero()}
        return {"z": self.wrap(self._pad([0, 1]))}

    def conjugation(self):
        return self.extension_degree // 2 if self.extension_degree % 2 == 0 else None


def _residue(value: Fraction, p: int) -> int:
    if value.denominator % p == 0:
        raise FieldDivisionByZeroError(f"{value} has no residue mod {p}")
    return value.numerator * pow(value.denominator, p - 2, p) % p


class SexticS3Context(FieldContext):
    """ℚ(α, ω) with α³ = 2 and ω² = −1 − ω"""
    kind = "sextic_s3"
    degree = 6
    element_class = SexticS3Elem

    def __init__(self):
        # products of basis monomials αⁱωʲ, reduced by both rewrite rules
        self._omega_powers = (
            (Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(1)),
            (Fraction(-1), Fraction(-1)),
        )
        table = {}
        for i1 in range(3):
            for j1 in range(2):
                for i2 in range(3):
                    for j2 in range(2):
                        table[(2 * i1 + j1, 2 * i2 + j2)] = self._monomial(i1 + i2, j1 + j2)
        self._product_table = table
        self._elements = tuple((a, b) for a in range(3) for b in range(2))
        self._action_tables = {g: self._action_table(g) for g in self._elements}

    def _monomial(self, alphaPower: int, omegaPower: int) -> tuple:
        """Coordinates of α^alphaPower·ω^omegaPower"""
        coefficient = Fraction(1)
        while alphaPower >= 3:
            coefficient *= 2
            alphaPower -= 3
        c0, c1 = self._omega_powers[omegaPower % 3]
        coords = [Fraction(0)] * 6
        coords[2 * alphaPower] = coefficient * c0
        coords[2 * alphaPower + 1] = coefficient * c1
        return tuple(coords)

    def _action_table(self, g) -> Tuple[tuple, ...]:
        # τᵃσᵇ sends αⁱωʲ to αⁱω^{j·2ᵇ + a·i}
        a, b = g
        return tuple(self._monomial(i, j * (2 ** b) + a * i) for i in range(3) for j in range(2))

    @property
    def key(self) -> tuple:
        return (self.kind,)

    def spec(self):
        return {"kind": self.kind}

    def multiply(self, a, b):
        result = [Fraction(0)] * 6
        table = self._product_table
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        xy = x * y
                        for k, r in enumerate(table[(i, j)]):
                            if r:
                                result[k] += xy * r
        return tuple(result)

    def inverse(self, a):
        matrix = mult_matrix(self.wrap(a))
        solution = solve(matrix, [Fraction(1)] + [Fraction(0)] * 5)
        if solution is None:
            raise FieldDivisionByZeroError("singular multiplication matrix")
        return tuple(solution)

    def apply(self, a, g):
        table = self._action_tables[g]
        result = [Fraction(0)] * 6
        for i, c in enumerate(a):
            if c:
                for k, r in enumerate(table[i]):
                    if r:
                        result[k] += c * r
        return tuple(result)

    def group_elements(self):
        return self._elements

    def group_multiply(self, g, h):
        a, b = g
        c, d = h
        return ((a + (c if b == 0 else -c)) % 3, (b + d) % 2)

    def basis_labels(self):
        return ["1", "w", "a", "a*w", "a^2", "a^2*w"]

    def generators(self):
        return {"a": self.wrap(self._monomial(1, 0)), "w": self.wrap(self._monomial(0, 1))}

    def conjugation(self):
        return (0, 1)


# ---------------------------------------------------------
# Context constructors
# ---------------------------------------------------------

@functools.lru_cache(maxsize=None)
def cyc_context(n: int) -> CyclotomicContext:
    if not isinstance(n, int) or n < 2:
        raise InvalidConductorError(f"conductor must be an integer >= 2, got {n}")
    logger.debug(f"building cyclotomic context n={n}")
    return CyclotomicContext(n)


@functools.lru_cache(maxsize=None)
def quad_context(d: int) -> QuadraticContext:
    if d in (0, 1) or any(e > 1 for e in sp.factorint(abs(d)).values()):
        raise InvalidConductorError(f"quadratic field needs squarefree d not in {{0, 1}}, got {d}")
    return QuadraticContext(d)


@functools.lru_cache(maxsize=None)
def ff_context(p: int, m: int) -> FiniteFieldContext:
    if not sp.isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    if m < 1:
        raise InvalidDegreeError(f"extension degree must be >= 1, got {m}")
    modulus = gf_least_irreducible(m, p)
    logger.debug(f"GF({p}^{m}) modulus {modulus}")
    return FiniteFieldContext(p, m, modulus)


@functools.lru_cache(maxsize=None)
def sextic_context() -> SexticS3Context:
    return SexticS3Context()


def field_context(spec: Union[str, Dict[str, Any]]) -> FieldContext:
    """Context from a JSON spec dict or a CLI string like 'cyclotomic:5'"""
    if isinstance(spec, str):
        parts = spec.strip().lower().split(":")
        kind, args = parts[0], parts[1:]
        try:
            if kind == "cyclotomic" and len(args) == 1:
                return cyc_context(int(args[0]))
            if kind == "quadratic" and len(args) == 1:
                return quad_context(int(args[0]))
            if kind == "finite" and len(args) == 2:
                return ff_context(int(args[0]), int(args[1]))
        except ValueError as parseError:
            raise UnsupportedFieldError(f"bad field spec {spec!r}: {parseError}")
        if kind in ("sextic", "sextic_s3") and not args:
            return sextic_context()
        raise UnsupportedFieldError(f"unsupported field spec {spec!r}")
    kind = spec.get("kind")
    if kind == "cyclotomic":
        return cyc_context(int(spec["n"]))
    if kind == "quadratic":
        return quad_context(int(spec["d"]))
    if kind == "finite":
        return ff_context(int(spec["p"]), int(spec["m"]))
    if kind == "sextic_s3":
        return sextic_context()
    raise UnsupportedFieldError(f"unsupported field spec {spec!r}")


# ---------------------------------------------------------
# Operations
# ---------------------------------------------------------

def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact add / sub / mul / div of two elements of one context"""
    if a.context != b.context:
        raise ContextMismatchError(f"{a.context} vs {b.context}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def apply_aut(a: FieldElement, g: GroupElement) -> FieldElement:
    context = a.context
    if not context.has_group_element(g):
        raise NotInGroupError(f"{g!r} is not in the Galois group of {context}")
    return context.wrap(context.apply(a.coords, g))


def mult_matrix(a: FieldElement) -> List[List[Scalar]]:
    """Matrix of x ↦ a·x in the context basis (column j is a·basis_j)"""
    context = a.context
    columns = [context.multiply(a.coords, basisElement.coords) for basisElement in context.basis()]
    return [[columns[j][i] for j in range(context.degree)] for i in range(context.degree)]


def norm_full(a: FieldElement) -> Scalar:
    """N_{K/prime field}(a) = det(m_a); a Fraction, or a residue for finite fields"""
    matrix = mult_matrix(a)
    if a.context.characteristic:
        return determinant_mod(matrix, a.context.characteristic)
    return determinant(matrix)


def norm_rel(a: FieldElement, H: Iterable[GroupElement]) -> FieldElement:
    """∏_{h∈H} h(a)"""
    result = a.context.one()
    for h in H:
        result = result * apply_aut(a, h)
    return result


def _require_char_zero(a: FieldElement, operation: str):
    if a.context.characteristic:
        raise UnsupportedFieldError(f"{operation} needs a characteristic-0 field, got {a.context}")


def min_poly(a: FieldElement) -> RationalPolynomial:
    """Monic minimal polynomial over ℚ.

    The characteristic polynomial of x ↦ a·x is a power of the minimal
    polynomial, so its squarefree part is the answer.
    """
    _require_char_zero(a, "min_poly")
    return characteristic_polynomial(mult_matrix(a)).squarefree_part()


def is_totally_positive(a: FieldElement) -> bool:
    """Zero, or every conjugate of a is real and strictly positive.

    An element with a non-real conjugate is never totally positive here. The
    vacuous convention for fields that are not formally real is applied at the
    field level: semiring_tag in the cpm service tags such fixed fields as the
    whole field, and membership there only asks for Galois fixedness.
    """
    _require_char_zero(a, "is_totally_positive")
    if a.is_zero():
        return True
    polynomial = min_poly(a)
    if polynomial.real_root_count() < polynomial.degree:
        return False
    return sturm_root_count(polynomial, (None, 0)) == 0


def ff_elements(context: FiniteFieldContext) -> List[FFElem]:
    """Every element of GF(p^m), ordered by integer code"""
    p, m = context.characteristic, context.degree
    result = []
    for code in range(context.order):
        coords = []
        for _ in range(m):
            coords.append(code % p)
            code //= p
        result.append(context.wrap(tuple(coords)))
    return result


def ff_subfield_elements(context: FiniteFieldContext, k: int) -> List[FFElem]:
    """Elements of the subfield GF(p^k), i.e. the fixed points of t ↦ t^{p^k}"""
    if context.extension_degree % k:
        raise InvalidDegreeError(f"{k} does not divide {context.extension_degree}")
    q = context.characteristic ** k
    return [a for a in ff_elements(context) if a ** q == a]


def ff_norm_image(context: FiniteFieldContext, base_degree: int) -> set:
    """Image of N(a) = a^{(p^m − 1)/(q − 1)}, q = p^base_degree, over all of GF(p^m)"""
    m = context.extension_degree
    if base_degree < 1 or m % base_degree:
        raise InvalidDegreeError(f"base degree {base_degree} does not divide {m}")
    q = context.characteristic ** base_degree
    exponent = (context.order - 1) // (q - 1)
    image = {context.zero()}
    for a in ff_elements(context):
        if not a.is_zero():
            image.add(a ** exponent)
    return image


def random_element(context: FieldContext, rng: random.Random, height: int = 5) -> FieldElement:
    """Random element with coordinate numerators in [−height, height] and small denominators"""
    if context.characteristic:
        return context.element([rng.randrange(context.characteristic) for _ in range(context.degree)])
    coords = [Fraction(rng.randint(-height, height), rng.choice((1, 1, 1, 2))) for _ in range(context.degree)]
    return context.element(coords)


def random_nonzero_element(context: FieldContext, rng: random.Random, height: int = 5) -> FieldElement:
    while True:
        a = random_element(context, rng, height)
        if not a.is_zero():
            return a
