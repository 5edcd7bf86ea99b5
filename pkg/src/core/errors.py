class GaloisCpmError(Exception):
    """Base class for every algebraic or input error raised by the library."""


class InvalidConductorError(GaloisCpmError):
    """Conductor or quadratic discriminant does not define a supported field."""


class ContextMismatchError(GaloisCpmError):
    """Operands live in different field contexts."""


class FieldDivisionByZeroError(GaloisCpmError, ZeroDivisionError):
    """Division by the zero element of a field."""


class NotInGroupError(GaloisCpmError):
    """Group element does not belong to the Galois group of the context."""


class DimensionMismatchError(GaloisCpmError):
    """Matrix dimensions are not composable."""


class NotPrimeError(GaloisCpmError):
    """Finite field characteristic is not prime."""


class InvalidDegreeError(GaloisCpmError):
    """Extension degree or base degree is not admissible."""


class GroupOrderBoundError(GaloisCpmError):
    """Subgroup enumeration refused because the group is too large."""


class NotNormalSubgroupError(GaloisCpmError):
    """Quotient requested by a subgroup that is not normal."""


class SubgroupMismatchError(GaloisCpmError):
    """Subgroups belong to different parent groups."""


class InvalidTransversalError(GaloisCpmError):
    """Representatives do not pick exactly one element per left coset."""


class FixedFieldSearchError(GaloisCpmError):
    """No primitive element of the fixed field was found within the bound."""


class NotEquivariantError(GaloisCpmError):
    """Matrix is not in the equivariant subcategory of the folding data."""


class NotDecoheredError(GaloisCpmError):
    """Matrix is not a morphism between the given decohered objects."""


class NotInvolutionError(GaloisCpmError):
    """Element used as dagger conjugation is not the conjugating involution."""


class UnsupportedFieldError(GaloisCpmError):
    """Operation is not available for this kind of field."""


class ZeroPolynomialError(GaloisCpmError):
    """Operation undefined on the zero polynomial."""


class ExpressionParseError(GaloisCpmError):
    """Element expression could not be parsed."""


class CodecError(GaloisCpmError):
    """JSON payload does not describe a valid field, element or matrix."""
