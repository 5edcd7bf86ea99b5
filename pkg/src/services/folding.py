"""Complete and transversal folding functors on Mat(K).

The folding of M over an ordered list of group elements is the Kronecker
product of the conjugates g(M) in that order. Complete folding uses the whole
group in canonical order; transversal folding uses coset representatives and
requires the entries of M to be fixed by the subgroup.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, List, Optional, Sequence, Tuple

from src.config.settings import appSettings
from src.core.errors import DimensionMismatchError, NotEquivariantError
from src.core.galois_groups import (
    GaloisGroup,
    Subgroup,
    Transversal,
    is_fixed_by,
    left_transversal,
    make_transversal,
)
from src.core.mat_category import (
    Matrix,
    coset_permutation,
    factor_permutation,
    interleave_permutation,
    tensor,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FoldingData:
    """(G, H, T) with the identity family as η"""
    group: GaloisGroup
    subgroup: Subgroup
    transversal: Transversal

    @cached_property
    def regrouping_destination(self) -> Tuple[int, ...]:
        """Coset-major factor position (t, h) ↦ canonical position of t·h"""
        G = self.group
        return tuple(G.index(G.mul(t, h)) for t in self.transversal.reps for h in self.subgroup.sorted_members)

    def regrouping_permutation(self, n: int) -> List[int]:
        return factor_permutation([n] * self.group.order, self.regrouping_destination)


def folding_data(G: GaloisGroup, H: Subgroup, reps: Optional[Sequence[Hashable]] = None) -> FoldingData:
    transversal = left_transversal(G, H) if reps is None else make_transversal(G, H, reps)
    return FoldingData(G, H, transversal)


@dataclass(frozen=True)
class FoldedObject:
    base_dim: int
    folding: FoldingData

    @property
    def total_dim(self) -> int:
        return self.base_dim ** len(self.folding.transversal)


def act_matrix(M: Matrix, G: GaloisGroup, g: Hashable) -> Matrix:
    return M.map(lambda a: G.act(a, g))


def _balanced_tensor(factors: List[Matrix]) -> Matrix:
    # pairwise reduction keeps the left-to-right factor order
    while len(factors) > 1:
        paired = [tensor(factors[i], factors[i + 1]) for i in range(0, len(factors) - 1, 2)]
        if len(factors) % 2:
            paired.append(factors[-1])
        factors = paired
    return factors[0]


def fold_over(M: Matrix, elements: Sequence[Hashable], G: GaloisGroup) -> Matrix:
    """⊗_{g ∈ elements} g(M) with no equivariance precondition"""
    k = len(elements)
    limit = appSettings.max_dim
    if M.rows ** k > limit or M.cols ** k > limit:
        raise DimensionMismatchError(
            f"folded size {M.rows ** k}x{M.cols ** k} exceeds max_dim={limit}"
        )
    if k == 0:
        return Matrix.identity(M.context, 1)
    return _balanced_tensor([act_matrix(M, G, g) for g in elements])


def fold_complete(M: Matrix, G: GaloisGroup) -> Matrix:
    return fold_over(M, G.elements, G)


def fold_transversal(M: Matrix, folding: FoldingData) -> Matrix:
    H = folding.subgroup
    for entry in M.iter_entries():
        if not is_fixed_by(entry, H):
            raise NotEquivariantError(f"entry {entry} is not fixed by {H.label()}")
    return fold_over(M, folding.transversal.reps, folding.group)


def equivariance_conjugate(folded: Matrix, G: GaloisGroup, g: Hashable, rows: int, cols: int) -> Matrix:
    """coset_perm(g)⁻¹ · folded · coset_perm(g), with coset_perm(g)⁻¹ = coset_perm(g⁻¹)"""
    gInverse = G.inverse(g)
    return folded.permuted(coset_permutation(G, gInverse, rows), coset_permutation(G, gInverse, cols))


def check_equivariance(M: Matrix, G: GaloisGroup, g: Hashable) -> bool:
    folded = fold_complete(M, G)
    return act_matrix(folded, G, g) == equivariance_conjugate(folded, G, g, M.rows, M.cols)


def check_quotient_action(M: Matrix, G: GaloisGroup, H: Subgroup) -> bool:
    """Every representative of a coset of a normal H acts alike on the H-folded matrix.

    Two representatives t and t·h' differ on fld_H(M) by the internal factor
    permutation of h' inside H.
    """
    if not H.is_normal():
        return False
    HGroup = H.as_group()
    inner = fold_complete(M, HGroup)
    transversal = left_transversal(G, H)
    for t in transversal.reps:
        reference = act_matrix(inner, G, t)
        for hPrime in H.sorted_members:
            moved = act_matrix(inner, G, G.mul(t, hPrime))
            if moved != equivariance_conjugate(reference, HGroup, hPrime, M.rows, M.cols):
                logger.debug(f"quotient action differs at rep {t} and h'={hPrime}")
                return False
    return True


def check_factorization(M: Matrix, G: GaloisGroup, H: Subgroup, reps: Optional[Sequence[Hashable]] = None) -> bool:
    """fold_G(M) = P · fold_T(fold_H(M)) · P⁻¹ with P the regrouping permutation.

    The H-folded matrix is checked to be equivariant under H, which is the form
    of the transversal folding precondition it satisfies; for normal H the
    quotient formulation is checked as well.
    """
    data = folding_data(G, H, reps)
    HGroup = H.as_group()
    inner = fold_complete(M, HGroup)
    for h in H.sorted_members:
        if act_matrix(inner, G, h) != equivariance_conjugate(inner, HGroup, h, M.rows, M.cols):
            return False
    outer = fold_over(inner, data.transversal.reps, G)
    regrouped = outer.permuted(data.regrouping_permutation(M.rows), data.regrouping_permutation(M.cols))
    if regrouped != fold_complete(M, G):
        return False
    if H.is_normal():
        return check_quotient_action(M, G, H)
    return True


def fold_tensor_law(M: Matrix, N: Matrix, G: GaloisGroup) -> bool:
    """fold(M⊗N) = π·(fold M ⊗ fold N)·π⁻¹ with π the interleaving permutation"""
    k = G.order
    lhs = fold_complete(tensor(M, N), G)
    rhs = tensor(fold_complete(M, G), fold_complete(N, G)).permuted(
        interleave_permutation(M.rows, N.rows, k), interleave_permutation(M.cols, N.cols, k)
    )
    return lhs == rhs
