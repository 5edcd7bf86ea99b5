import random
from fractions import Fraction

import pytest

from src.core.errors import (
    ContextMismatchError,
    FieldDivisionByZeroError,
    InvalidConductorError,
    InvalidDegreeError,
    NotInGroupError,
    NotPrimeError,
    UnsupportedFieldError,
)
from src.core.exact_fields import (
    apply_aut,
    cyc_context,
    cyclotomic_polynomial,
    ff_context,
    ff_elements,
    ff_norm_image,
    ff_subfield_elements,
    field_arith,
    field_context,
    is_totally_positive,
    min_poly,
    norm_full,
    norm_rel,
    quad_context,
    random_element,
    random_nonzero_element,
    sextic_context,
)


def zeta(n):
    return cyc_context(n).generators()["z"]


# ---------------------------------------------------------
# Cyclotomic fields
# ---------------------------------------------------------

def test_cyclotomic_relations():
    z = zeta(5)
    assert cyc_context(5).degree == 4
    assert z ** 5 == 1
    assert 1 + z + z ** 2 + z ** 3 + z ** 4 == 0
    assert z ** -1 == z ** 4


@pytest.mark.parametrize("n, phi", [(1, "x - 1"), (5, "x^4 + x^3 + x^2 + x + 1"), (8, "x^4 + 1"),
                                    (12, "x^4 - x^2 + 1")])
def test_cyclotomic_polynomials(n, phi):
    assert str(cyclotomic_polynomial(n)) == phi


@pytest.mark.parametrize("n, expected", [(5, 5), (7, 7), (8, 2), (12, 1)])
def test_norm_of_one_minus_zeta(n, expected):
    assert norm_full(1 - zeta(n)) == expected


def test_automorphisms_of_cyclotomic_field():
    z = zeta(5)
    assert apply_aut(z, 2) == z ** 2
    assert apply_aut(z + z ** 3, 4) == z ** 4 + z ** 2
    assert z.conjugate() == z ** 4
    with pytest.raises(NotInGroupError):
        apply_aut(z, 5)
    with pytest.raises(NotInGroupError):
        apply_aut(zeta(6), 2)


def test_inverse_and_division():
    z = zeta(7)
    a = 2 - z + 3 * z ** 4
    assert (a * a.inverse()).is_one()
    assert a / a == 1
    with pytest.raises(FieldDivisionByZeroError):
        a / cyc_context(7).zero()
    with pytest.raises(ZeroDivisionError):
        cyc_context(7).zero().inverse()


def test_minimal_polynomials():
    z = zeta(5)
    assert str(min_poly(z)) == "x^4 + x^3 + x^2 + x + 1"
    assert str(min_poly(z + z ** 4)) == "x^2 + x - 1"
    assert str(min_poly(cyc_context(5).scalar(Fraction(3, 2)))) == "x - 3/2"


def test_total_positivity():
    z = zeta(5)
    assert is_totally_positive(z + z ** 4 + 2)
    assert not is_totally_positive(z + z ** 4)
    assert is_totally_positive(cyc_context(5).zero())
    assert not is_totally_positive(cyc_context(5).scalar(-1))
    # conjugates of a root of unity are not real
    assert not is_totally_positive(z)
    assert not is_totally_positive(-z)
    assert is_totally_positive(z * z ** 4)


def test_element_formatting():
    z = zeta(5)
    assert str(1 - z) == "1 - z"
    assert str(Fraction(1, 2) + 3 * z ** 2) == "1/2 + 3*z^2"
    assert str(cyc_context(5).zero()) == "0"


# ---------------------------------------------------------
# Quadratic fields
# ---------------------------------------------------------

def test_quadratic_norms():
    root5 = quad_context(5).generators()["z"]
    assert norm_full(2 + root5) == -1
    i = quad_context(-1).generators()["z"]
    assert norm_full(3 + 4 * i) == 25
    assert (3 + 4 * i).conjugate() == 3 - 4 * i


@pytest.mark.parametrize("d", [0, 1, 4, -8, 12])
def test_quadratic_rejects_bad_discriminants(d):
    with pytest.raises(InvalidConductorError):
        quad_context(d)


def test_conjugations():
    assert cyc_context(5).conjugation() == 4
    assert quad_context(-3).conjugation() == 1
    assert quad_context(5).conjugation() == 0
    assert ff_context(2, 4).conjugation() == 2
    assert ff_context(2, 3).conjugation() is None
    assert sextic_context().conjugation() == (0, 1)


# ---------------------------------------------------------
# Finite fields
# ---------------------------------------------------------

def test_finite_field_construction():
    gf16 = ff_context(2, 4)
    assert gf16.modulus == (1, 1, 0, 0, 1)
    assert gf16.order == 16
    assert len(ff_elements(gf16)) == 16
    assert ff_context(3, 2).modulus == (1, 0, 1)
    with pytest.raises(NotPrimeError):
        ff_context(4, 2)
    with pytest.raises(InvalidDegreeError):
        ff_context(2, 0)


def test_finite_field_inverses_exhaustive():
    gf9 = ff_context(3, 2)
    for a in ff_elements(gf9):
        if not a.is_zero():
            assert (a * a.inverse()).is_one()


def test_frobenius_is_additive_and_periodic():
    gf16 = ff_context(2, 4)
    elements = ff_elements(gf16)
    for a in elements:
        assert a ** 16 == a
        assert a.frobenius(4) == a
        for b in elements[:5]:
            assert (a + b).frobenius() == a.frobenius() + b.frobenius()


@pytest.mark.parametrize("p, m, k, size", [(2, 2, 1, 2), (3, 2, 1, 3), (2, 4, 1, 2), (2, 4, 2, 4)])
def test_norm_image_is_the_subfield(p, m, k, size):
    context = ff_context(p, m)
    image = ff_norm_image(context, k)
    assert image == set(ff_subfield_elements(context, k))
    assert len(image) == size


def test_norm_image_rejects_bad_base_degree():
    with pytest.raises(InvalidDegreeError):
        ff_norm_image(ff_context(2, 4), 3)


def test_finite_field_norm_is_a_residue():
    gf9 = ff_context(3, 2)
    for a in ff_elements(gf9):
        assert gf9.scalar(norm_full(a)) == norm_rel(a, (0, 1))


# ---------------------------------------------------------
# The sextic splitting field of x^3 - 2
# ---------------------------------------------------------

def test_sextic_generators():
    context = sextic_context()
    alpha, omega = context.generators()["a"], context.generators()["w"]
    assert alpha ** 3 == 2
    assert omega ** 2 + omega + 1 == 0
    theta = alpha + omega
    assert (theta * theta.inverse()).is_one()
    assert str(min_poly(alpha)) == "x^3 - 2"
    assert min_poly(theta).degree == 6


def test_sextic_action():
    context = sextic_context()
    alpha, omega = context.generators()["a"], context.generators()["w"]
    assert apply_aut(alpha, (1, 0)) == alpha * omega
    assert apply_aut(omega, (0, 1)) == omega ** 2
    assert apply_aut(alpha, (0, 1)) == alpha
    assert norm_full(alpha) == 4


# ---------------------------------------------------------
# Construction and mixing
# ---------------------------------------------------------

@pytest.mark.parametrize(
    "spec, expected",
    [
        ("cyclotomic:5", lambda: cyc_context(5)),
        ("quadratic:-3", lambda: quad_context(-3)),
        ("finite:2:4", lambda: ff_context(2, 4)),
        ("sextic", sextic_context),
        ({"kind": "cyclotomic", "n": 7}, lambda: cyc_context(7)),
        ({"kind": "finite", "p": 3, "m": 2}, lambda: ff_context(3, 2)),
        ({"kind": "sextic_s3"}, sextic_context),
    ],
)
def test_field_context_specs(spec, expected):
    assert field_context(spec) == expected()


@pytest.mark.parametrize("spec", ["foo:1", "cyclotomic:x", "finite:2", {"kind": "padic"}])
def test_field_context_rejects_unknown_specs(spec):
    with pytest.raises(UnsupportedFieldError):
        field_context(spec)


def test_contexts_do_not_mix():
    with pytest.raises(ContextMismatchError):
        zeta(5) + zeta(7)
    with pytest.raises(ContextMismatchError):
        field_arith(zeta(5), zeta(7), "mul")


def test_field_arith_operations():
    z = zeta(5)
    assert field_arith(z, z, "add") == 2 * z
    assert field_arith(z, z, "sub") == 0
    assert field_arith(z, z, "div") == 1
    with pytest.raises(ValueError):
        field_arith(z, z, "pow")


def test_random_elements_are_reproducible():
    context = cyc_context(7)
    first = [random_element(context, random.Random(3)) for _ in range(3)]
    second = [random_element(context, random.Random(3)) for _ in range(3)]
    assert first == second
    assert not random_nonzero_element(context, random.Random(3)).is_zero()
