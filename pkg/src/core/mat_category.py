"""Dense exact matrices over a field context: the category Mat(K).

Composition f∘g is the matrix product f·g, the monoidal product is the
Kronecker product with the first factor most significant, and every Galois
group element acts entrywise.
"""
import logging
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterator, List, Optional, Sequence, Tuple

from src.core.errors import ContextMismatchError, DimensionMismatchError, NotInvolutionError
from src.core.exact_fields import FieldContext, FieldElement, apply_aut, random_element

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndexCodec:
    """Mixed-radix flat index of a tensor product, first factor most significant"""
    factor_dims: Tuple[int, ...]

    @property
    def size(self) -> int:
        total = 1
        for d in self.factor_dims:
            total *= d
        return total

    def encode(self, multiIndex: Sequence[int]) -> int:
        flat = 0
        for digit, d in zip(multiIndex, self.factor_dims):
            flat = flat * d + digit
        return flat

    def decode(self, flat: int) -> Tuple[int, ...]:
        digits = []
        for d in reversed(self.factor_dims):
            digits.append(flat % d)
            flat //= d
        return tuple(reversed(digits))

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        for flat in range(self.size):
            yield self.decode(flat)


class Matrix:
    __slots__ = ("context", "rows", "cols", "entries")

    def __init__(self, context: FieldContext, entries: Sequence[Sequence[FieldElement]], cols: Optional[int] = None):
        rowsTuple = tuple(tuple(row) for row in entries)
        width = cols if cols is not None else (len(rowsTuple[0]) if rowsTuple else 0)
        for row in rowsTuple:
            if len(row) != width:
                raise DimensionMismatchError("ragged matrix rows")
            for entry in row:
                if entry.context != context:
                    raise ContextMismatchError(f"entry in {entry.context}, matrix over {context}")
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "rows", len(rowsTuple))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rowsTuple)

    @classmethod
    def _trusted(cls, context: FieldContext, rows: int, cols: int, entries) -> "Matrix":
        matrix = cls.__new__(cls)
        object.__setattr__(matrix, "context", context)
        object.__setattr__(matrix, "rows", rows)
        object.__setattr__(matrix, "cols", cols)
        object.__setattr__(matrix, "entries", tuple(tuple(row) for row in entries))
        return matrix

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    # constructors

    @classmethod
    def from_rows(cls, context: FieldContext, rows: Sequence[Sequence]) -> "Matrix":
        """Entries may be field elements, ints or Fractions"""
        converted = [[x if isinstance(x, FieldElement) else context.scalar(x) for x in row] for row in rows]
        return cls(context, converted)

    @classmethod
    def identity(cls, context: FieldContext, n: int) -> "Matrix":
        zero, one = context.zero(), context.one()
        return cls._trusted(context, n, n, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, context: FieldContext, rows: int, cols: int) -> "Matrix":
        zero = context.zero()
        return cls._trusted(context, rows, cols, [[zero] * cols for _ in range(rows)])

    @classmethod
    def scalar(cls, a: FieldElement) -> "Matrix":
        return cls._trusted(a.context, 1, 1, [[a]])

    @classmethod
    def column(cls, vector: Sequence[FieldElement]) -> "Matrix":
        if not vector:
            raise DimensionMismatchError("empty vector")
        return cls(vector[0].context, [[v] for v in vector])

    # access

    def __getitem__(self, position: Tuple[int, int]) -> FieldElement:
        i, j = position
        return self.entries[i][j]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def iter_entries(self) -> Iterator[FieldElement]:
        for row in self.entries:
            yield from row

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.context == other.context and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.context.key, self.shape, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries[:4])
        more = " ..." if self.rows > 4 else ""
        return f"Matrix({self.rows}x{self.cols}, [{body}{more}])"

    # linear structure

    def _require_same_shape(self, other: "Matrix"):
        if self.context != other.context:
            raise ContextMismatchError(f"{self.context} vs {other.context}")
        if self.shape != other.shape:
            raise DimensionMismatchError(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_shape(other)
        return Matrix._trusted(self.context, self.rows, self.cols,
                               [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        return Matrix._trusted(self.context, self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        return Matrix._trusted(self.context, self.rows, self.cols, [[c * a for a in r] for r in self.entries])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return compose(self, other)

    def transpose(self) -> "Matrix":
        return Matrix._trusted(self.context, self.cols, self.rows,
                               [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def map(self, function: Callable[[FieldElement], FieldElement]) -> "Matrix":
        return Matrix._trusted(self.context, self.rows, self.cols, [[function(a) for a in r] for r in self.entries])

    def permuted(self, rowPerm: Sequence[int], colPerm: Sequence[int]) -> "Matrix":
        """P_row·self·P_colᵀ, entry (i, j) moved to (rowPerm[i], colPerm[j])"""
        out = [[None] * self.cols for _ in range(self.rows)]
        for i, row in enumerate(self.entries):
            target = out[rowPerm[i]]
            for j, entry in enumerate(row):
                target[colPerm[j]] = entry
        return Matrix._trusted(self.context, self.rows, self.cols, out)

    def select(self, rowIndices: Sequence[int], colIndices: Sequence[int]) -> "Matrix":
        return Matrix._trusted(self.context, len(rowIndices), len(colIndices),
                               [[self.entries[i][j] for j in colIndices] for i in rowIndices])

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.iter_entries())

    def is_diagonal(self) -> bool:
        return all(a.is_zero() for i, row in enumerate(self.entries) for j, a in enumerate(row) if i != j)

    def is_square(self) -> bool:
        return self.rows == self.cols


# ---------------------------------------------------------
# Categorical structure
# ---------------------------------------------------------

def compose(f: Matrix, g: Matrix) -> Matrix:
    """f∘g as the exact product f·g"""
    if f.context != g.context:
        raise ContextMismatchError(f"{f.context} vs {g.context}")
    if f.cols != g.rows:
        raise DimensionMismatchError(f"cannot compose {f.rows}x{f.cols} with {g.rows}x{g.cols}")
    zero = f.context.zero()
    result = []
    for row in f.entries:
        out = [zero] * g.cols
        for k, a in enumerate(row):
            if a.is_zero():
                continue
            gRow = g.entries[k]
            unit = a.is_one()
            for j, b in enumerate(gRow):
                if b.is_zero():
                    continue
                out[j] = out[j] + (b if unit else a * b)
        result.append(out)
    return Matrix._trusted(f.context, f.rows, g.cols, result)


def compose_all(matrices: Sequence[Matrix]) -> Matrix:
    result = matrices[0]
    for m in matrices[1:]:
        result = compose(result, m)
    return result


def tensor(f: Matrix, g: Matrix) -> Matrix:
    """Kronecker product, row index i_f·rows(g) + i_g"""
    if f.context != g.context:
        raise ContextMismatchError(f"{f.context} vs {g.context}")
    zero = f.context.zero()
    rows, cols = f.rows * g.rows, f.cols * g.cols
    out = [[zero] * cols for _ in range(rows)]
    for i1, fRow in enumerate(f.entries):
        for j1, a in enumerate(fRow):
            if a.is_zero():
                continue
            unit = a.is_one()
            for i2, gRow in enumerate(g.entries):
                target = out[i1 * g.rows + i2]
                offset = j1 * g.cols
                for j2, b in enumerate(gRow):
                    if not b.is_zero():
                        target[offset + j2] = b if unit else a * b
    return Matrix._trusted(f.context, rows, cols, out)


def tensor_all(matrices: Sequence[Matrix], context: Optional[FieldContext] = None) -> Matrix:
    """Left-to-right Kronecker product; the empty product is the 1×1 identity"""
    if not matrices:
        if context is None:
            raise DimensionMismatchError("empty tensor product needs a context")
        return Matrix.identity(context, 1)
    result = matrices[0]
    for m in matrices[1:]:
        result = tensor(result, m)
    return result


def apply_aut_matrix(M: Matrix, g: Hashable) -> Matrix:
    return M.map(lambda a: apply_aut(a, g))


def dagger(M: Matrix, conj: Optional[Hashable] = None) -> Matrix:
    """Conjugate transpose with respect to an involutive automorphism"""
    context = M.context
    if conj is None:
        conj = context.conjugation()
        if conj is None:
            raise NotInvolutionError(f"{context} has no conjugating involution")
    if conj not in context.group_elements():
        raise NotInvolutionError(f"{conj!r} is not a Galois group element of {context}")
    identity = context.group_identity
    # the identity only serves as the dagger of a real field
    if conj == identity and conj != context.conjugation():
        raise NotInvolutionError(f"{conj!r} is the identity, not an involution of {context}")
    if context.group_multiply(conj, conj) != identity:
        raise NotInvolutionError(f"{conj!r} is not an involution")
    return apply_aut_matrix(M, conj).transpose()


# ---------------------------------------------------------
# Structural permutations
# ---------------------------------------------------------

def perm_matrix(context: FieldContext, p: Sequence[int]) -> Matrix:
    """0/1 matrix with entry 1 at (p(i), i)"""
    size = len(p)
    if sorted(p) != list(range(size)):
        raise DimensionMismatchError(f"{list(p)} is not a permutation")
    zero, one = context.zero(), context.one()
    out = [[zero] * size for _ in range(size)]
    for i, target in enumerate(p):
        out[target][i] = one
    return Matrix._trusted(context, size, size, out)


def invert_permutation(p: Sequence[int]) -> List[int]:
    inverse = [0] * len(p)
    for i, target in enumerate(p):
        inverse[target] = i
    return inverse


def factor_permutation(dims: Sequence[int], destination: Sequence[int]) -> List[int]:
    """Flat-index map moving tensor factor i (of dim dims[i]) to position destination[i]"""
    if sorted(destination) != list(range(len(dims))):
        raise DimensionMismatchError(f"{list(destination)} is not a factor permutation")
    targetDims = [0] * len(dims)
    for i, position in enumerate(destination):
        targetDims[position] = dims[i]
    source, target = IndexCodec(tuple(dims)), IndexCodec(tuple(targetDims))
    mapping = []
    for multiIndex in source:
        moved = [0] * len(dims)
        for i, digit in enumerate(multiIndex):
            moved[destination[i]] = digit
        mapping.append(target.encode(moved))
    return mapping


def factor_perm(context: FieldContext, dims: Sequence[int], destination: Sequence[int]) -> Matrix:
    return perm_matrix(context, factor_permutation(dims, destination))


def interleave_permutation(n: int, m: int, k: int) -> List[int]:
    """(a_1..a_k, b_1..b_k) ↦ (a_1, b_1, .., a_k, b_k)"""
    dims = [n] * k + [m] * k
    destination = [2 * t for t in range(k)] + [2 * t + 1 for t in range(k)]
    return factor_permutation(dims, destination)


def interleave_perm(context: FieldContext, n: int, m: int, k: int) -> Matrix:
    return perm_matrix(context, interleave_permutation(n, m, k))


def coset_permutation(group, g: Hashable, n: int) -> List[int]:
    """Move the factor at position h to position g·h over n^{|G|}"""
    destination = [group.index(group.mul(g, h)) for h in group.elements]
    return factor_permutation([n] * group.order, destination)


def coset_perm(group, g: Hashable, n: int) -> Matrix:
    return perm_matrix(group.context, coset_permutation(group, g, n))


def random_matrix(context: FieldContext, rows: int, cols: int, rng: random.Random, height: int = 5) -> Matrix:
    return Matrix._trusted(context, rows, cols,
                           [[random_element(context, rng, height) for _ in range(cols)] for _ in range(rows)])

