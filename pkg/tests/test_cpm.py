import random
from fractions import Fraction

import pytest

from src.config.settings import GaloisCpmSettings
from src.core.errors import (
    DimensionMismatchError,
    FieldDivisionByZeroError,
    NotDecoheredError,
    NotInvolutionError,
    SubgroupMismatchError,
)
from src.core.exact_fields import cyc_context, ff_context, norm_rel, quad_context
from src.core.galois_groups import galois_group, unit_group
from src.core.mat_category import Matrix, compose, random_matrix
from src.services import cpm
from src.services.cpm import (
    TOTALLY_POSITIVE,
    WHOLE_FIELD,
    DecoheredObject,
    compress_decohered,
    coset_constant_indices,
    cpm_dagger,
    cpm_morphism,
    cpm_tensor,
    decohere_from_spiders,
    decohere_map,
    decohered,
    discard_from_spiders,
    discard_map,
    hilbert90_phase,
    is_equivariant,
    nested_norm_formula,
    semiring_membership,
    semiring_tag,
    spider,
    sum_of_norms_search,
)
from src.services.folding import fold_complete

# ---------------------------------------------------------
# Utility helpers
# ---------------------------------------------------------


def zeta(n):
    return cyc_context(n).generators()["z"]


def rank(projector: Matrix) -> int:
    return sum(1 for i in range(projector.rows) if not projector[(i, i)].is_zero())


def norm_sum(witnesses, H):
    total = H.parent.context.zero()
    for a in witnesses:
        total = total + norm_rel(a, H)
    return total


# ---------------------------------------------------------
# Discarding and decoherence
# ---------------------------------------------------------

@pytest.mark.parametrize("generators, support", [([], 16), ([4], 4), ([2], 2)])
def test_discard_support(generators, support):
    G = unit_group(5)
    effect = discard_map(2, G, G.subgroup(generators))
    assert effect.realized.shape == (1, 16)
    assert sum(1 for entry in effect.realized.iter_entries() if entry.is_one()) == support


def test_coset_constant_indices():
    G = unit_group(5)
    indices = coset_constant_indices(2, G, G.subgroup([4]))
    assert len(indices) == 4
    assert indices[0] == 0
    assert indices[-1] == 15


@pytest.mark.parametrize("generator, expected", [(2, 4), (6, 8), (3, 2)])
def test_decoherence_rank_in_q_zeta7(generator, expected):
    G = unit_group(7)
    projector = decohere_map(2, G, G.subgroup([generator]))
    assert projector.shape == (64, 64)
    assert projector.is_diagonal()
    assert rank(projector) == expected


@pytest.mark.parametrize("n, generator", [(5, 4), (7, 6), (7, 2)])
def test_spiders_agree_with_coset_constancy(n, generator):
    G = unit_group(n)
    H = G.subgroup([generator])
    assert decohere_from_spiders(2, G, H) == decohere_map(2, G, H)
    assert discard_from_spiders(2, G, H) == discard_map(2, G, H).realized


def test_spider_shapes():
    context = cyc_context(5)
    cup = spider(context, 2, 0, 2)
    assert cup.shape == (4, 1)
    assert spider(context, 3, 1, 1) == Matrix.identity(context, 3)


def test_decoherence_is_idempotent():
    G = unit_group(5)
    for H in (G.trivial(), G.subgroup([4]), G.full()):
        D = decohere_map(2, G, H)
        assert compose(D, D) == D


def test_join_law():
    G = unit_group(7)
    cubic, quadratic = G.subgroup([6]), G.subgroup([2])
    product = compose(decohere_map(2, G, cubic), decohere_map(2, G, quadratic))
    assert product == decohere_map(2, G, G.full())


def test_subgroup_must_belong_to_the_group():
    with pytest.raises(SubgroupMismatchError):
        decohere_map(2, unit_group(5), unit_group(7).full())


def test_decoherence_respects_max_dim(monkeypatch):
    monkeypatch.setattr(cpm, "appSettings", GaloisCpmSettings(max_dim=8))
    G = unit_group(5)
    with pytest.raises(DimensionMismatchError):
        decohere_map(2, G, G.full())
    with pytest.raises(DimensionMismatchError):
        discard_map(2, G, G.full())


# ---------------------------------------------------------
# CPM morphisms and scalars
# ---------------------------------------------------------

def test_cpm_scalar_is_the_nested_norm():
    G = unit_group(5)
    Lambda = G.subgroup([4])
    state = random_matrix(G.context, 2, 1, random.Random(8), 3)
    morphism = cpm_morphism(state, 1, [(2, Lambda)], G)
    assert morphism.realized.shape == (1, 1)
    expected = nested_norm_formula([state[(0, 0)], state[(1, 0)]], Lambda)
    assert morphism.realized[(0, 0)] == expected


def test_nested_norm_of_a_unit_vector():
    G = unit_group(5)
    z = zeta(5)
    # one nonzero entry: the nested norm collapses to the full norm
    value = nested_norm_formula([1 - z, G.context.zero()], G.subgroup([4]))
    assert value == 5


def test_cpm_morphisms_are_equivariant():
    G = unit_group(5)
    a = random_matrix(G.context, 4, 1, random.Random(12), 2)
    f = cpm_morphism(a, 2, [(2, G.subgroup([4]))], G)
    assert f.realized.shape == (16, 1)
    assert is_equivariant(f.realized, G, 1, 2)


def test_cpm_morphism_checks_environment_size():
    G = unit_group(5)
    with pytest.raises(DimensionMismatchError):
        cpm_morphism(Matrix.identity(G.context, 3), 2, [(2, G.full())], G)


def test_cpm_dagger_is_exact_for_abelian_groups():
    G = unit_group(5)
    a = random_matrix(G.context, 4, 1, random.Random(13), 2)
    f = cpm_morphism(a, 2, [(2, G.subgroup([4]))], G)
    rebuilt, exact = cpm_dagger(f)
    assert exact
    assert rebuilt.in_dim == 2
    assert rebuilt.out_dim == 1


def test_cpm_dagger_needs_an_involution():
    G = galois_group(ff_context(2, 3))
    a = Matrix.from_rows(G.context, [[1]])
    f = cpm_morphism(a, 1, [(1, G.full())], G)
    with pytest.raises(NotInvolutionError):
        cpm_dagger(f)


def test_cpm_tensor_shape():
    G = unit_group(5)
    rng = random.Random(14)
    f = cpm_morphism(random_matrix(G.context, 2, 1, rng, 2), 1, [(2, G.full())], G)
    g = cpm_morphism(random_matrix(G.context, 2, 1, rng, 2), 2, [(1, G.full())], G)
    product = cpm_tensor(f, g)
    assert product.shape == (16, 1)
    assert is_equivariant(product, G, 1, 2)


# ---------------------------------------------------------
# Decohered objects
# ---------------------------------------------------------

def test_compression_of_decohered_morphisms():
    G = unit_group(5)
    obj = DecoheredObject(2, G, G.subgroup([4]))
    rng = random.Random(15)
    M = decohered(random_matrix(G.context, 16, 16, rng, 2), obj, obj)
    N = decohered(random_matrix(G.context, 16, 16, rng, 2), obj, obj)
    compressedM = compress_decohered(M, obj, obj)
    assert compressedM.shape == (4, 4)
    assert compress_decohered(compose(M, N), obj, obj) == compose(compressedM, compress_decohered(N, obj, obj))


def test_full_decoherence_compresses_a_folded_state_to_full_norms():
    G = unit_group(5)
    z = zeta(5)
    v = Matrix(G.context, [[1 - z], [G.context.one()]])
    point = DecoheredObject(1, G, G.full())
    qubit = DecoheredObject(2, G, G.full())
    state = decohered(fold_complete(v, G), point, qubit)
    assert compress_decohered(state, point, qubit) == Matrix.from_rows(G.context, [[5], [1]])


def test_compression_rejects_undecohered_matrices():
    G = unit_group(5)
    obj = DecoheredObject(2, G, G.subgroup([4]))
    with pytest.raises(NotDecoheredError):
        compress_decohered(Matrix.from_rows(G.context, [[1] * 16 for _ in range(16)]), obj, obj)
    with pytest.raises(DimensionMismatchError):
        compress_decohered(Matrix.identity(G.context, 4), obj, obj)


# ---------------------------------------------------------
# Scalar semirings
# ---------------------------------------------------------

def test_semiring_tags():
    G5, G7 = unit_group(5), unit_group(7)
    assert semiring_tag(G5.full()) == TOTALLY_POSITIVE
    assert semiring_tag(G5.subgroup([4])) == TOTALLY_POSITIVE
    assert semiring_tag(G5.trivial()) == WHOLE_FIELD
    assert semiring_tag(G7.subgroup([2])) == WHOLE_FIELD
    assert semiring_tag(galois_group(ff_context(2, 4)).full()) == WHOLE_FIELD


def test_semiring_membership():
    G = unit_group(5)
    H = G.subgroup([4])
    z = zeta(5)
    assert semiring_membership(z + z ** 4 + 2, TOTALLY_POSITIVE, H)
    assert not semiring_membership(z + z ** 4, TOTALLY_POSITIVE, H)
    assert semiring_membership(z + z ** 4, WHOLE_FIELD, H)
    assert not semiring_membership(z, WHOLE_FIELD, H)
    # ℚ(ζ₅) itself is not formally real
    trivial = G.trivial()
    assert semiring_tag(trivial) == WHOLE_FIELD
    assert semiring_membership(-z, WHOLE_FIELD, trivial)
    assert not semiring_membership(-z, TOTALLY_POSITIVE, trivial)
    with pytest.raises(ValueError):
        semiring_membership(z, "positive", H)


def test_hilbert90_phase_has_unit_norm():
    z = zeta(5)
    phase = hilbert90_phase(1 + 2 * z, 4)
    assert norm_rel(phase, [1, 4]).is_one()
    with pytest.raises(NotInvolutionError):
        hilbert90_phase(1 + z, 2)
    with pytest.raises(NotInvolutionError):
        hilbert90_phase(1 + z, 1)
    with pytest.raises(FieldDivisionByZeroError):
        hilbert90_phase(cyc_context(5).zero(), 4)


# ---------------------------------------------------------
# Sums of norms
# ---------------------------------------------------------

def test_negative_unit_is_a_norm_in_q_sqrt5():
    G = galois_group(quad_context(5))
    outcome = sum_of_norms_search(G.context.scalar(-1), G.full(), 3, 2)
    assert outcome.found
    assert len(outcome.witnesses) == 1
    assert norm_sum(outcome.witnesses, G.full()) == -1


@pytest.mark.parametrize("target", [Fraction(1, 2), Fraction(7, 3)])
def test_rational_targets_in_q_sqrt5(target):
    G = galois_group(quad_context(5))
    outcome = sum_of_norms_search(G.context.scalar(target), G.full(), 3, 4)
    assert outcome.found
    assert norm_sum(outcome.witnesses, G.full()) == target


def test_two_is_a_sum_of_two_norms_in_q_zeta5():
    G = unit_group(5)
    outcome = sum_of_norms_search(G.context.scalar(2), G.full(), 1, 3)
    assert outcome.found
    assert len(outcome.witnesses) == 2
    assert norm_sum(outcome.witnesses, G.full()) == 2


def test_negative_target_is_not_a_sum_of_totally_positive_norms():
    G = unit_group(5)
    outcome = sum_of_norms_search(G.context.scalar(-1), G.full(), 1, 3)
    assert not outcome.found
    assert not outcome.truncated


def test_zero_needs_no_terms():
    G = unit_group(5)
    outcome = sum_of_norms_search(G.context.zero(), G.full(), 1, 3)
    assert outcome.found
    assert outcome.witnesses == []


def test_search_state_cap():
    G = galois_group(quad_context(5))
    outcome = sum_of_norms_search(G.context.scalar(Fraction(1, 1000)), G.full(), 3, 4, max_states=50)
    assert not outcome.found
    assert outcome.truncated


def test_search_over_gf4_skips_denominators_divisible_by_two():
    G = galois_group(ff_context(2, 2))
    one = G.context.one()
    outcome = sum_of_norms_search(one, G.full(), 2, 2)
    assert outcome.found
    assert norm_sum(outcome.witnesses, G.full()) == one
    # every candidate is a distinct nonzero element of GF(4)
    assert outcome.candidates == 3


def test_full_norms_over_gf4_stay_in_gf2():
    G = galois_group(ff_context(2, 2))
    outcome = sum_of_norms_search(G.context.generators()["z"], G.full(), 2, 2)
    assert not outcome.found
    assert not outcome.truncated
