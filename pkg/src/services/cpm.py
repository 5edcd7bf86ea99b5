"""Galois CPM constructions over Mat(K).

Discarding effects and decoherence projectors are indexed by subgroups of the
Galois group: a multi-index over the canonical order of G survives iff it is
constant on every left coset of the subgroup.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from src.config.settings import appSettings
from src.core.errors import (
    DimensionMismatchError,
    FieldDivisionByZeroError,
    NotDecoheredError,
    NotInvolutionError,
    SubgroupMismatchError,
)
from src.core.exact_fields import FieldContext, FieldElement, FiniteFieldContext, apply_aut, is_totally_positive
from src.core.galois_groups import (
    GaloisGroup,
    Subgroup,
    fixed_field,
    is_fixed_by,
    left_cosets,
    left_transversal,
)
from src.core.mat_category import (
    IndexCodec,
    Matrix,
    compose,
    dagger,
    invert_permutation,
    interleave_permutation,
    tensor,
)
from src.services.folding import (
    FoldedObject,
    act_matrix,
    equivariance_conjugate,
    fold_complete,
    fold_over,
    folding_data,
)

logger = logging.getLogger(__name__)

WHOLE_FIELD = "whole_field"
TOTALLY_POSITIVE = "totally_positive"


# ---------------------------------------------------------
# Coset-constancy
# ---------------------------------------------------------

def coset_position_classes(G: GaloisGroup, H: Subgroup) -> List[List[int]]:
    """Canonical positions grouped by left coset of H"""
    return [sorted(G.index(g) for g in coset) for coset in left_cosets(G, H)]


def is_coset_constant(multiIndex: Sequence[int], classes: List[List[int]]) -> bool:
    return all(len({multiIndex[p] for p in positions}) == 1 for positions in classes)


def coset_constant_indices(n: int, G: GaloisGroup, H: Subgroup) -> List[int]:
    """Flat indices of fld_G(n) constant on left cosets, ordered by transversal tuples.

    The tuple (x_t)_{t ∈ T} is enumerated in mixed radix with the first
    representative most significant; the digit at canonical position g is x_t
    for the coset tH containing g.
    """
    transversal = left_transversal(G, H)
    positionCoset = [transversal.coset_of(g) for g in G.elements]
    codec = IndexCodec(tuple([n] * G.order))
    result = []
    for cosetDigits in itertools.product(range(n), repeat=len(transversal)):
        result.append(codec.encode([cosetDigits[c] for c in positionCoset]))
    return result


def _check_subgroup(G: GaloisGroup, H: Subgroup):
    if H.parent != G:
        raise SubgroupMismatchError(f"{H.label()} is not a subgroup of {G!r}")


# ---------------------------------------------------------
# Environment structure
# ---------------------------------------------------------

@dataclass(frozen=True)
class EnvEffect:
    """Single-row 0/1 effect on fld_G(E₁ ⊗ .. ⊗ E_k)"""
    blocks: Tuple[Tuple[int, Subgroup], ...]
    group: GaloisGroup
    realized: Matrix

    @property
    def env_dim(self) -> int:
        total = 1
        for n, _ in self.blocks:
            total *= n
        return total


def env_effect(blocks: Sequence[Tuple[int, Subgroup]], G: GaloisGroup) -> EnvEffect:
    """Multi-block effect: per canonical position the digit splits into block digits,
    and every block's digits must be constant on the left cosets of its subgroup"""
    for _, H in blocks:
        _check_subgroup(G, H)
    blockDims = tuple(n for n, _ in blocks)
    envDim = IndexCodec(blockDims).size
    if envDim ** G.order > appSettings.max_dim:
        raise DimensionMismatchError(f"environment of size {envDim ** G.order} exceeds max_dim")
    blockCodec = IndexCodec(blockDims)
    classes = [coset_position_classes(G, H) for _, H in blocks]
    context = G.context
    zero, one = context.zero(), context.one()
    row = []
    for multiIndex in IndexCodec(tuple([envDim] * G.order)):
        split = [blockCodec.decode(digit) for digit in multiIndex]
        keep = all(
            is_coset_constant([digits[b] for digits in split], classes[b]) for b in range(len(blocks))
        )
        row.append(one if keep else zero)
    return EnvEffect(tuple(blocks), G, Matrix._trusted(context, 1, len(row), [row]))


def discard_map(n: int, G: GaloisGroup, H: Subgroup) -> EnvEffect:
    return env_effect([(n, H)], G)


def decohere_map(n: int, G: GaloisGroup, H: Subgroup) -> Matrix:
    """Diagonal projector onto coset-constant multi-indices of fld_G(n)"""
    _check_subgroup(G, H)
    size = n ** G.order
    if size > appSettings.max_dim:
        raise DimensionMismatchError(f"decoherence of size {size} exceeds max_dim")
    context = G.context
    zero, one = context.zero(), context.one()
    keep = set(coset_constant_indices(n, G, H))
    return Matrix._trusted(context, size, size,
                           [[one if (i == j and i in keep) else zero for j in range(size)] for i in range(size)])


def spider(context: FieldContext, n: int, legsIn: int, legsOut: int) -> Matrix:
    """Standard-basis spider n^legsIn → n^legsOut"""
    zero, one = context.zero(), context.one()
    rowsCodec, colsCodec = IndexCodec(tuple([n] * legsOut)), IndexCodec(tuple([n] * legsIn))
    entries = [[zero] * colsCodec.size for _ in range(rowsCodec.size)]
    for i in range(n):
        entries[rowsCodec.encode([i] * legsOut)][colsCodec.encode([i] * legsIn)] = one
    return Matrix._trusted(context, rowsCodec.size, colsCodec.size, entries)


def decohere_from_spiders(n: int, G: GaloisGroup, H: Subgroup) -> Matrix:
    """P · (⊗_{t∈T} spider_H) · P⁻¹ with P regrouping coset-major factors"""
    data = folding_data(G, H)
    block = spider(G.context, n, H.order, H.order)
    folded = fold_over(block, data.transversal.reps, G)
    perm = data.regrouping_permutation(n)
    return folded.permuted(perm, perm)


def discard_from_spiders(n: int, G: GaloisGroup, H: Subgroup) -> Matrix:
    data = folding_data(G, H)
    cap = spider(G.context, n, H.order, 0)
    folded = fold_over(cap, data.transversal.reps, G)
    return folded.permuted([0], data.regrouping_permutation(n))


# ---------------------------------------------------------
# CPM morphisms
# ---------------------------------------------------------

@dataclass(frozen=True)
class CpmMorphism:
    pure_part: Matrix
    in_dim: int
    out_dim: int
    env: EnvEffect
    realized: Matrix

    @property
    def group(self) -> GaloisGroup:
        return self.env.group


def cpm_morphism(a: Matrix, out_dim: int, env_spec: Sequence[Tuple[int, Subgroup]], G: GaloisGroup) -> CpmMorphism:
    """(id_{fld B} ⊗ ξ_E) · π_{B,E}ᵀ · fld_G(a) for a : A → B ⊗ E"""
    env = env_effect(env_spec, G)
    envDim = env.env_dim
    if a.rows != out_dim * envDim:
        raise DimensionMismatchError(f"pure part has {a.rows} rows, expected {out_dim}·{envDim}")
    k = G.order
    folded = fold_complete(a, G)
    # rows of fld(B⊗E) back to fld B ⊗ fld E
    unwired = folded.permuted(invert_permutation(interleave_permutation(out_dim, envDim, k)), list(range(folded.cols)))
    realized = compose(tensor(Matrix.identity(a.context, out_dim ** k), env.realized), unwired)
    return CpmMorphism(a, a.cols, out_dim, env, realized)


def is_equivariant(realized: Matrix, G: GaloisGroup, in_dim: int, out_dim: int) -> bool:
    """g(M) = coset_perm(g)⁻¹ · M · coset_perm(g) for every g"""
    return all(
        act_matrix(realized, G, g) == equivariance_conjugate(realized, G, g, out_dim, in_dim) for g in G
    )


def cpm_tensor(f: CpmMorphism, g: CpmMorphism) -> Matrix:
    """f ⊠ g = π_{B,D} · (f ⊗ g) · π_{A,C}⁻¹ on realized maps"""
    k = f.group.order
    product = tensor(f.realized, g.realized)
    return product.permuted(interleave_permutation(f.out_dim, g.out_dim, k),
                            interleave_permutation(f.in_dim, g.in_dim, k))


def cpm_dagger(f: CpmMorphism, conj: Optional[Hashable] = None) -> Tuple[CpmMorphism, bool]:
    """Normal form of the dagger, a'[(x, e), y] = conj(a[(y, e), x]), and whether it
    reproduces dagger(realized); exact for abelian groups"""
    context = f.pure_part.context
    conj = context.conjugation() if conj is None else conj
    if conj is None:
        raise NotInvolutionError(f"{context} has no conjugating involution")
    envDim = f.env.env_dim
    a = f.pure_part
    entries = []
    for x in range(f.in_dim):
        for e in range(envDim):
            entries.append([f.group.act(a[(y * envDim + e, x)], conj) for y in range(f.out_dim)])
    daggerPure = Matrix._trusted(context, f.in_dim * envDim, f.out_dim, entries)
    rebuilt = cpm_morphism(daggerPure, f.in_dim, f.env.blocks, f.group)
    return rebuilt, rebuilt.realized == dagger(f.realized, conj)


def nested_norm_formula(v: Sequence[FieldElement], Lambda: Subgroup) -> FieldElement:
    """∏_{t∈T} t(Σ_i N_Λ(v_i))"""
    G = Lambda.parent
    context = G.context
    inner = context.zero()
    for entry in v:
        product = context.one()
        for h in Lambda:
            product = product * G.act(entry, h)
        inner = inner + product
    result = context.one()
    for t in left_transversal(G, Lambda).reps:
        result = result * G.act(inner, t)
    return result


# ---------------------------------------------------------
# Decohered objects and compression
# ---------------------------------------------------------

@dataclass(frozen=True)
class DecoheredObject:
    base_dim: int
    group: GaloisGroup
    subgroup: Subgroup

    @cached_property
    def folded(self) -> FoldedObject:
        return FoldedObject(self.base_dim, folding_data(self.group, self.group.trivial()))

    @cached_property
    def idempotent(self) -> Matrix:
        return decohere_map(self.base_dim, self.group, self.subgroup)

    @cached_property
    def kept_indices(self) -> List[int]:
        return coset_constant_indices(self.base_dim, self.group, self.subgroup)


def decohered(M: Matrix, src: DecoheredObject, dst: DecoheredObject) -> Matrix:
    """dec_dst · M · dec_src"""
    return compose(compose(dst.idempotent, M), src.idempotent)


def compress_decohered(M: Matrix, src: DecoheredObject, dst: DecoheredObject) -> Matrix:
    if M.rows != dst.folded.total_dim or M.cols != src.folded.total_dim:
        raise DimensionMismatchError(f"{M.rows}x{M.cols} does not map {src.folded.total_dim} to {dst.folded.total_dim}")
    if decohered(M, src, dst) != M:
        raise NotDecoheredError("matrix is not a morphism between the decohered objects")
    return M.select(dst.kept_indices, src.kept_indices)


# ---------------------------------------------------------
# Scalar semirings
# ---------------------------------------------------------

def semiring_tag(H: Subgroup) -> str:
    """totally_positive when Fix(H) is formally real, whole_field otherwise"""
    if isinstance(H.parent.context, FiniteFieldContext):
        return WHOLE_FIELD
    return TOTALLY_POSITIVE if fixed_field(H).is_real() else WHOLE_FIELD


def semiring_membership(a: FieldElement, claim: str, H: Subgroup) -> bool:
    if claim == WHOLE_FIELD:
        return is_fixed_by(a, H)
    if claim == TOTALLY_POSITIVE:
        return is_fixed_by(a, H) and is_totally_positive(a)
    raise ValueError(f"unknown semiring claim {claim!r}")


def hilbert90_phase(b: FieldElement, g: Hashable) -> FieldElement:
    """g(b)/b, whose relative norm over ⟨g⟩ is 1"""
    context = b.context
    if b.is_zero():
        raise FieldDivisionByZeroError("phase of zero")
    identity = context.group_identity
    if g == identity or context.group_multiply(g, g) != identity:
        raise NotInvolutionError(f"{g!r} does not have order 2")
    return apply_aut(b, g) / b


# ---------------------------------------------------------
# Sums of norms
# ---------------------------------------------------------

@dataclass
class SearchOutcome:
    witnesses: Optional[List[FieldElement]]
    statesExplored: int = 0
    candidates: int = 0
    truncated: bool = False

    @property
    def found(self) -> bool:
        return self.witnesses is not None


def _candidate_elements(context: FieldContext, height: int):
    """x/d for integral coordinates in [−h, h] and d = 1..h, by (d, Σ|c|, coords)

    In characteristic p the denominators divisible by p are skipped and each
    residue vector is produced once.
    """
    characteristic = context.characteristic
    coordinateRange = range(-height, height + 1)
    vectors = sorted(itertools.product(coordinateRange, repeat=context.degree),
                     key=lambda c: (sum(abs(x) for x in c), c))
    seen = set()
    for d in range(1, height + 1):
        if characteristic and d % characteristic == 0:
            continue
        for coords in vectors:
            if d > 1 and all(Fraction(c, d).denominator == 1 for c in coords):
                continue
            if not any(coords):
                continue
            candidate = context.element([Fraction(c, d) for c in coords])
            if characteristic:
                if candidate.is_zero() or candidate in seen:
                    continue
                seen.add(candidate)
            yield candidate


def _nonnegative_rational(a: FieldElement) -> bool:
    return a.is_scalar() and a.scalar_value() >= 0


def sum_of_norms_search(target: FieldElement, H: Subgroup, height_bound: int, term_bound: int,
                        max_states: Optional[int] = None) -> SearchOutcome:
    """Breadth-first search for target = Σ_i N_H(a_i), fewest terms first"""
    if target.is_zero():
        return SearchOutcome([])
    G = H.parent
    limit = appSettings.search_max_states if max_states is None else max_states

    values: Dict[FieldElement, FieldElement] = {}
    candidateCount = 0
    for a in _candidate_elements(target.context, height_bound):
        candidateCount += 1
        value = a.context.one()
        for h in H:
            value = value * G.act(a, h)
        values.setdefault(value, a)
    logger.debug(f"🔍 {len(values)} distinct norm values from {candidateCount} candidates")

    # positivity pruning needs an ordered field
    prune = (not target.context.characteristic and _nonnegative_rational(target)
             and all(_nonnegative_rational(v) for v in values))
    if prune:
        bound = target.scalar_value()
        values = {v: a for v, a in values.items() if v.scalar_value() <= bound}

    if target in values:
        return SearchOutcome([values[target]], 1, candidateCount)

    layer: Dict[FieldElement, List[FieldElement]] = {v: [a] for v, a in values.items()}
    explored = len(layer)
    for terms in range(2, term_bound + 1):
        # close with a single value before widening the layer
        for partial, witness in layer.items():
            remainder = target - partial
            if remainder in values:
                return SearchOutcome(witness + [values[remainder]], explored, candidateCount)
        if terms == term_bound:
            break
        nextLayer: Dict[FieldElement, List[FieldElement]] = {}
        for partial, witness in layer.items():
            for value, a in values.items():
                total = partial + value
                if prune and total.scalar_value() > bound:
                    continue
                if total not in nextLayer:
                    nextLayer[total] = witness + [a]
                    explored += 1
                    if explored >= limit:
                        logger.warning(f"⚠️ sum-of-norms search hit the state cap {limit}")
                        return SearchOutcome(None, explored, candidateCount, truncated=True)
        layer = nextLayer
    return SearchOutcome(None, explored, candidateCount)
