"""Property suites over the Galois CPM constructions.

Each suite is a function taking a recorder, a seeded random generator and a
sample count. Suites are independent, so the runner may execute them on a
thread pool; reports always come back in registry order.
"""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.config.settings import appSettings
from src.core.codec import VerificationReport, encode_coords, encode_matrix
from src.core.errors import NotEquivariantError, NotNormalSubgroupError
from src.core.exact_fields import (
    cyc_context,
    ff_context,
    ff_elements,
    ff_norm_image,
    ff_subfield_elements,
    is_totally_positive,
    norm_full,
    norm_rel,
    quad_context,
    random_element,
    random_nonzero_element,
    sextic_context,
)
from src.core.galois_groups import (
    all_subgroups,
    finite_fixed_field,
    fixed_field,
    galois_group,
    is_fixed_by,
    join,
    left_transversal,
    parse_element,
    quotient_group,
)
from src.core.mat_category import (
    Matrix,
    compose,
    dagger,
    factor_permutation,
    interleave_permutation,
    random_matrix,
    tensor,
)
from src.services.cpm import (
    TOTALLY_POSITIVE,
    WHOLE_FIELD,
    DecoheredObject,
    compress_decohered,
    cpm_dagger,
    cpm_morphism,
    cpm_tensor,
    decohere_from_spiders,
    decohere_map,
    decohered,
    discard_from_spiders,
    discard_map,
    env_effect,
    equivariance_conjugate,
    is_equivariant,
    nested_norm_formula,
    semiring_membership,
    semiring_tag,
    sum_of_norms_search,
)
from src.services.folding import (
    check_equivariance,
    check_factorization,
    fold_complete,
    fold_tensor_law,
    fold_transversal,
    folding_data,
)

logger = logging.getLogger(__name__)


@dataclass
class SuiteRecorder:
    suite: str
    casesRun: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def check(self, passed: bool, case: str, **details):
        self.casesRun += 1
        if passed:
            return
        failure: Dict[str, Any] = {"case": case}
        for key, value in details.items():
            failure[key] = value if isinstance(value, (str, int, bool, list, dict)) else str(value)
        self.failures.append(failure)
        logger.warning(f"⚠️ {self.suite}: {case} failed")


SuiteFunction = Callable[[SuiteRecorder, random.Random, int], None]


def _height() -> int:
    return appSettings.sample_height


def _arithmetic_contexts():
    return [
        cyc_context(5), cyc_context(7), cyc_context(8), cyc_context(12),
        quad_context(5), quad_context(-3), sextic_context(),
        ff_context(2, 4), ff_context(3, 2),
    ]


# ---------------------------------------------------------
# Fields and norms
# ---------------------------------------------------------

def field_axioms(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for context in _arithmetic_contexts():
        G = galois_group(context)
        for _ in range(samples):
            a, b, c = (random_element(context, rng, _height()) for _ in range(3))
            where = {"field": str(context), "a": encode_coords(a), "b": encode_coords(b), "c": encode_coords(c)}
            recorder.check((a + b) + c == a + (b + c), "additive associativity", **where)
            recorder.check((a * b) * c == a * (b * c), "multiplicative associativity", **where)
            recorder.check(a * (b + c) == a * b + a * c, "distributivity", **where)
            recorder.check(a * b == b * a, "commutativity", **where)
            if not a.is_zero():
                recorder.check((a * a.inverse()).is_one(), "inverse", **where)
            g, h = rng.choice(G.elements), rng.choice(G.elements)
            recorder.check(G.act(a * b, g) == G.act(a, g) * G.act(b, g), "automorphism respects products",
                           g=str(g), **where)
            recorder.check(G.act(a + b, g) == G.act(a, g) + G.act(b, g), "automorphism respects sums",
                           g=str(g), **where)
            recorder.check(G.act(G.act(a, h), g) == G.act(a, G.mul(g, h)), "action composes",
                           g=str(g), h=str(h), **where)


def norm_laws(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for context in _arithmetic_contexts():
        G = galois_group(context)
        p = context.characteristic
        subgroups = list(all_subgroups(G))
        conj = context.conjugation()
        hermitianChecks = not p and conj is not None
        if hermitianChecks:
            fixedByConj = G.subgroup([conj])
            claim = semiring_tag(fixedByConj)
        for _ in range(samples):
            a, b = random_element(context, rng, _height()), random_element(context, rng, _height())
            where = {"field": str(context), "a": encode_coords(a), "b": encode_coords(b)}
            product = norm_full(a) * norm_full(b)
            if p:
                product %= p
            recorder.check(norm_full(a * b) == product, "norm is multiplicative", **where)
            recorder.check(norm_rel(a, G) == context.scalar(norm_full(a)), "relative norm over G is the full norm",
                           **where)
            H = rng.choice(subgroups)
            inner = norm_rel(a, H)
            recorder.check(is_fixed_by(inner, H), "relative norm is fixed by its subgroup",
                           subgroup=H.label(), **where)
            tower = norm_rel(inner, left_transversal(G, H).reps)
            recorder.check(tower == norm_rel(a, G), "norms compose along the tower", subgroup=H.label(), **where)
            if hermitianChecks:
                hermitian = a * G.act(a, conj)
                other = b * G.act(b, conj)
                recorder.check(semiring_membership(hermitian, claim, fixedByConj),
                               "a times its conjugate lies in the scalar semiring", semiring=claim, **where)
                recorder.check(semiring_membership(hermitian + other, claim, fixedByConj)
                               and semiring_membership(hermitian * other, claim, fixedByConj),
                               "the scalar semiring is closed under + and *", semiring=claim, **where)
    # relative norms from ℚ(ζ₅) land in ℚ(√5)⁺
    quintic = cyc_context(5)
    realSubgroup = galois_group(quintic).subgroup([4])
    for _ in range(samples):
        a = random_element(quintic, rng, _height())
        recorder.check(is_totally_positive(norm_rel(a, realSubgroup)),
                       "relative norm onto the real subfield is totally positive", a=encode_coords(a))


def lattice_correspondence(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for context in (cyc_context(5), cyc_context(7), cyc_context(8), cyc_context(12), quad_context(5),
                    sextic_context()):
        G = galois_group(context)
        lattice = all_subgroups(G)
        fields = {H: fixed_field(H) for H in lattice}
        for H in lattice:
            fixed = fields[H]
            recorder.check(fixed.degree * H.order == G.order, "fixed field degree is the index",
                           field=str(context), subgroup=H.label(), degree=fixed.degree)
            stabilizer = {g for g in G if G.act(fixed.primitive, g) == fixed.primitive}
            recorder.check(stabilizer == set(H.members), "primitive element is fixed by exactly its subgroup",
                           field=str(context), subgroup=H.label())
        for H in lattice:
            for K in lattice:
                if lattice.includes(H, K):
                    recorder.check(is_fixed_by(fields[K].primitive, H), "inclusion reverses on fixed fields",
                                   field=str(context), smaller=H.label(), larger=K.label())
        for H in lattice:
            if not H.is_normal():
                continue
            quotient = quotient_group(G, H)
            for _ in range(samples):
                fixedElement = norm_rel(random_element(context, rng, _height()), H)
                agrees = all(len({G.act(fixedElement, g) for g in coset.members}) == 1 for coset in quotient.elements)
                recorder.check(agrees, "coset members agree on fixed elements", field=str(context),
                               subgroup=H.label(), a=encode_coords(fixedElement))
    finite = ff_context(2, 4)
    for H in all_subgroups(galois_group(finite)):
        order, degree = finite_fixed_field(H)
        recorder.check(degree * H.order == 4 and len(ff_subfield_elements(finite, degree)) == order,
                       "finite fixed field has the expected order", subgroup=H.label(), order=order)


# ---------------------------------------------------------
# Folding
# ---------------------------------------------------------

def folding_functoriality(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for n, square in ((3, 2), (4, 2), (5, 2), (7, 1)):
        context = cyc_context(n)
        G = galois_group(context)
        for _ in range(samples):
            if square == 2:
                M = random_matrix(context, 2, 2, rng, _height())
                N = random_matrix(context, 2, 2, rng, _height())
            else:
                M = random_matrix(context, 2, 1, rng, _height())
                N = random_matrix(context, 1, 2, rng, _height())
            where = {"conductor": n, "M": encode_matrix(M), "N": encode_matrix(N)}
            recorder.check(fold_complete(compose(M, N), G) == compose(fold_complete(M, G), fold_complete(N, G)),
                           "folding preserves composition", **where)
            recorder.check(fold_complete(dagger(M), G) == dagger(fold_complete(M, G)),
                           "folding commutes with the dagger", **where)
            c = random_element(context, rng, _height())
            recorder.check(fold_complete(Matrix.scalar(c), G) == Matrix.scalar(context.scalar(norm_full(c))),
                           "folded scalar is the norm", conductor=n, c=encode_coords(c))
            if square == 2 and G.order <= 2:
                recorder.check(fold_tensor_law(M, N, G), "folding is monoidal", **where)
            else:
                column = random_matrix(context, 2, 1, rng, _height())
                row = random_matrix(context, 1, 2, rng, _height())
                recorder.check(fold_tensor_law(column, row, G), "folding is monoidal", conductor=n,
                               M=encode_matrix(column), N=encode_matrix(row))
        recorder.check(fold_complete(Matrix.identity(context, 2), G) == Matrix.identity(context, 2 ** G.order),
                       "folding preserves identities", conductor=n)


def equivariance(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for context in (cyc_context(3), cyc_context(4), cyc_context(5), cyc_context(7), sextic_context()):
        G = galois_group(context)
        for _ in range(samples):
            M = random_matrix(context, 2, 2 if G.order <= 4 else 1, rng, _height())
            g = rng.choice(G.elements)
            recorder.check(check_equivariance(M, G, g), "folded matrix is equivariant",
                           field=str(context), g=str(g), M=encode_matrix(M))


def factorization(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for context in (cyc_context(5), cyc_context(7), sextic_context()):
        G = galois_group(context)
        for H in all_subgroups(G):
            for _ in range(samples):
                M = random_matrix(context, 2, 2 if G.order <= 4 else 1, rng, _height())
                recorder.check(check_factorization(M, G, H), "complete folding factors through a subgroup",
                               field=str(context), subgroup=H.label(), M=encode_matrix(M))
    G = galois_group(sextic_context())
    sigma = G.subgroup([parse_element(G, "s")])
    reps = [parse_element(G, token) for token in ("e", "ts", "t2")]
    M = random_matrix(G.context, 2, 1, rng, _height())
    recorder.check(check_factorization(M, G, sigma, reps), "factorization with a non-canonical transversal",
                   M=encode_matrix(M))


# ---------------------------------------------------------
# CPM structure
# ---------------------------------------------------------

def env_closure(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for n in (4, 5):
        context = cyc_context(n)
        G = galois_group(context)
        k = G.order
        subgroups = list(all_subgroups(G))
        for H in subgroups:
            effect = discard_map(2, G, H).realized
            recorder.check(effect == discard_from_spiders(2, G, H), "discard agrees with its spider form",
                           conductor=n, subgroup=H.label())
            recorder.check(all(equivariance_conjugate(effect, G, g, 1, 2) == effect for g in G),
                           "discard is invariant under coset permutations", conductor=n, subgroup=H.label())
        for _ in range(samples):
            H, K = rng.choice(subgroups), rng.choice(subgroups)
            joint = env_effect([(2, H), (2, K)], G).realized
            split = tensor(discard_map(2, G, H).realized, discard_map(2, G, K).realized)
            recorder.check(joint == split.permuted([0], interleave_permutation(2, 2, k)),
                           "environment effects compose blockwise", conductor=n, first=H.label(), second=K.label())

            a = random_matrix(context, 4, 1, rng, _height())
            f = cpm_morphism(a, 2, [(2, H)], G)
            recorder.check(is_equivariant(f.realized, G, 1, 2), "realized morphism is equivariant",
                           conductor=n, subgroup=H.label(), a=encode_matrix(a))
            _, exact = cpm_dagger(f)
            recorder.check(exact, "dagger has a normal form", conductor=n, subgroup=H.label(), a=encode_matrix(a))

            b = random_matrix(context, 2, 1, rng, _height())
            other = cpm_morphism(b, 1, [(2, K)], G)
            # a ⊗ b lives on B⊗E1⊗D⊗E2; regroup rows to B⊗D⊗E1⊗E2
            pure = tensor(a, b)
            regrouped = pure.permuted(factor_permutation([2, 2, 1, 2], [0, 2, 1, 3]), list(range(pure.cols)))
            combined = cpm_morphism(regrouped, 2, [(2, H), (2, K)], G)
            recorder.check(cpm_tensor(f, other) == combined.realized, "CPM morphisms are closed under tensor",
                           conductor=n, first=H.label(), second=K.label())


def _decoherence_contexts():
    return [cyc_context(5), cyc_context(7), sextic_context()]


def dec_idempotence(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for context in _decoherence_contexts():
        G = galois_group(context)
        for H in all_subgroups(G):
            projector = decohere_map(2, G, H)
            where = {"field": str(context), "subgroup": H.label()}
            recorder.check(compose(projector, projector) == projector, "decoherence is idempotent", **where)
            recorder.check(compose(discard_map(2, G, H).realized, projector) == discard_map(2, G, H).realized,
                           "discarding absorbs decoherence", **where)
            recorder.check(decohere_from_spiders(2, G, H) == projector, "decoherence agrees with its spider form",
                           **where)
            rank = sum(1 for i in range(projector.rows) if projector[(i, i)].is_one())
            recorder.check(rank == 2 ** H.index, "decoherence rank is n to the index", rank=rank, **where)
    context = cyc_context(5)
    G = galois_group(context)
    for H in all_subgroups(G):
        obj = DecoheredObject(2, G, H)
        for _ in range(samples):
            A, B = random_matrix(context, 2, 2, rng, _height()), random_matrix(context, 2, 2, rng, _height())
            left = decohered(fold_complete(A, G), obj, obj)
            right = decohered(fold_complete(B, G), obj, obj)
            recorder.check(
                compress_decohered(compose(left, right), obj, obj)
                == compose(compress_decohered(left, obj, obj), compress_decohered(right, obj, obj)),
                "compression is functorial", subgroup=H.label(), A=encode_matrix(A), B=encode_matrix(B),
            )


def join_law(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for context in _decoherence_contexts():
        G = galois_group(context)
        subgroups = list(all_subgroups(G))
        for H in subgroups:
            for K in subgroups:
                decH, decK = decohere_map(2, G, H), decohere_map(2, G, K)
                expected = decohere_map(2, G, join(H, K))
                where = {"field": str(context), "first": H.label(), "second": K.label()}
                recorder.check(compose(decH, decK) == expected, "decoherences compose to the join", **where)
                recorder.check(compose(decK, decH) == expected, "decoherences commute", **where)


def scalar_formula(recorder: SuiteRecorder, rng: random.Random, samples: int):
    cases = [(cyc_context(5), 2), (cyc_context(5), 3), (quad_context(5), 3), (quad_context(-3), 3),
             (cyc_context(7), 2)]
    for context, n in cases:
        G = galois_group(context)
        for Lambda in all_subgroups(G):
            for _ in range(samples):
                v = random_matrix(context, n, 1, rng, _height())
                value = cpm_morphism(v, 1, [(n, Lambda)], G).realized[(0, 0)]
                formula = nested_norm_formula([v[(i, 0)] for i in range(n)], Lambda)
                recorder.check(value == formula, "discarded state equals the nested norm", field=str(context),
                               subgroup=Lambda.label(), v=encode_matrix(v), scalar=str(value), formula=str(formula))
                recorder.check(value.is_scalar(), "scalars are rational", field=str(context), v=encode_matrix(v))


# ---------------------------------------------------------
# Scalar semirings
# ---------------------------------------------------------

def _state_entries(realized: Matrix, G, out_dim: int, claim) -> Matrix:
    source = DecoheredObject(1, G, G.full())
    target = DecoheredObject(out_dim, G, claim)
    return compress_decohered(decohered(realized, source, target), source, target)


def cyclo5_soundness(recorder: SuiteRecorder, rng: random.Random, samples: int):
    context = cyc_context(5)
    G = galois_group(context)
    Lambda = G.subgroup([4])
    recorder.check(semiring_tag(G.full()) == TOTALLY_POSITIVE and semiring_tag(Lambda) == TOTALLY_POSITIVE,
                   "real subfields carry totally positive scalars")
    recorder.check(semiring_tag(G.trivial()) == WHOLE_FIELD, "the whole cyclotomic field is not real")
    for _ in range(samples):
        envSubgroup = rng.choice([G.full(), Lambda, G.trivial()])
        a = random_matrix(context, 4, 1, rng, _height())
        realized = cpm_morphism(a, 2, [(2, envSubgroup)], G).realized
        for claim in (G.full(), Lambda):
            compressed = _state_entries(realized, G, 2, claim)
            recorder.check(
                all(semiring_membership(entry, TOTALLY_POSITIVE, claim) for entry in compressed.iter_entries()),
                "decohered state entries are totally positive", env=envSubgroup.label(),
                decohered=claim.label(), a=encode_matrix(a),
            )


def cyclo7_soundness(recorder: SuiteRecorder, rng: random.Random, samples: int):
    context = cyc_context(7)
    G = galois_group(context)
    realSub, imaginarySub = G.subgroup([6]), G.subgroup([2])
    recorder.check(semiring_tag(realSub) == TOTALLY_POSITIVE, "cubic real subfield is totally positive")
    recorder.check(semiring_tag(imaginarySub) == WHOLE_FIELD, "imaginary quadratic subfield is whole field")
    for _ in range(samples):
        mixed = random_matrix(context, 4, 1, rng, _height())
        scalar = cpm_morphism(mixed, 1, [(2, realSub), (2, imaginarySub)], G).realized[(0, 0)]
        recorder.check(semiring_membership(scalar, TOTALLY_POSITIVE, G.full()),
                       "mixed discards give nonnegative rationals", a=encode_matrix(mixed), scalar=str(scalar))

        a = random_matrix(context, 4, 1, rng, _height())
        compressed = _state_entries(cpm_morphism(a, 2, [(2, realSub)], G).realized, G, 2, realSub)
        recorder.check(all(semiring_membership(e, TOTALLY_POSITIVE, realSub) for e in compressed.iter_entries()),
                       "real-subgroup states are totally positive", a=encode_matrix(a))

        b = random_matrix(context, 4, 1, rng, _height())
        compressed = _state_entries(cpm_morphism(b, 2, [(2, imaginarySub)], G).realized, G, 2, imaginarySub)
        recorder.check(all(semiring_membership(e, WHOLE_FIELD, imaginarySub) for e in compressed.iter_entries()),
                       "imaginary-subgroup states lie in the fixed field", a=encode_matrix(b))


def completeness_search(recorder: SuiteRecorder, rng: random.Random, samples: int):
    cyclotomic = cyc_context(5)
    G = galois_group(cyclotomic)
    cases = [(cyclotomic.scalar(Fraction(t)), G.full(), 3, 8) for t in ("1", "2", "3", "5", "1/2", "7/3")]
    real = quad_context(5)
    cases.append((real.scalar(-1), galois_group(real).full(), 3, 2))
    for target, H, height, terms in cases:
        outcome = sum_of_norms_search(target, H, height, terms)
        total = target.context.zero()
        for witness in outcome.witnesses or []:
            total = total + norm_rel(witness, H)
        recorder.check(outcome.found and total == target, "target is a sum of norms",
                       field=str(target.context), target=str(target),
                       witnesses=[encode_coords(w) for w in outcome.witnesses or []])
    negative = sum_of_norms_search(cyclotomic.scalar(-1), G.full(), 1, 2)
    recorder.check(not negative.found, "negative rationals are not sums of cyclotomic norms")


def finite_field_exhaustive(recorder: SuiteRecorder, rng: random.Random, samples: int):
    for p, m in ((2, 2), (3, 2), (2, 4)):
        context = ff_context(p, m)
        G = galois_group(context)
        for k in range(1, m + 1):
            if m % k == 0:
                recorder.check(ff_norm_image(context, k) == set(ff_subfield_elements(context, k)),
                               "norm onto the subfield is surjective", field=str(context), base_degree=k)
        for Lambda in all_subgroups(G):
            _, degree = finite_fixed_field(Lambda)
            fixedElements = set(ff_subfield_elements(context, degree))
            obj = DecoheredObject(2, G, Lambda)
            column = 2 ** (len(left_transversal(G, Lambda)) - 1)
            image = set()
            for x in ff_elements(context):
                a = Matrix.from_rows(context, [[1, x], [0, 1]])
                compressed = compress_decohered(decohered(fold_complete(a, G), obj, obj), obj, obj)
                image.add(compressed[(0, column)])
            recorder.check(image == fixedElements, "decohered hom-sets cover the fixed field",
                           field=str(context), subgroup=Lambda.label())
            for _ in range(samples):
                M = random_matrix(context, 2, 2, rng)
                compressed = compress_decohered(decohered(fold_complete(M, G), obj, obj), obj, obj)
                recorder.check(all(e in fixedElements for e in compressed.iter_entries()),
                               "decohered entries lie in the fixed field", field=str(context),
                               subgroup=Lambda.label(), M=encode_matrix(M))


def s3_transversal(recorder: SuiteRecorder, rng: random.Random, samples: int):
    context = sextic_context()
    G = galois_group(context)
    tau, sigma = parse_element(G, "t"), parse_element(G, "s")
    e = G.identity
    recorder.check(G.power(tau, 3) == e and G.power(sigma, 2) == e, "generator orders")
    recorder.check(G.mul(G.mul(sigma, tau), sigma) == G.inverse(tau), "sigma inverts tau")
    gens = context.generators()
    alpha, omega = gens["a"], gens["w"]
    recorder.check(G.act(alpha, tau) == alpha * omega and G.act(omega, tau) == omega, "tau on generators")
    recorder.check(G.act(alpha, sigma) == alpha and G.act(omega, sigma) == omega * omega, "sigma on generators")

    lattice = all_subgroups(G)
    recorder.check(len(lattice) == 6, "S3 has six subgroups", count=len(lattice))
    for H in lattice:
        if H.order == 2:
            recorder.check(not H.is_normal(), "order-two subgroups are not normal", subgroup=H.label())
            try:
                quotient_group(G, H)
                recorder.check(False, "quotient by a non-normal subgroup is refused", subgroup=H.label())
            except NotNormalSubgroupError:
                recorder.check(True, "quotient by a non-normal subgroup is refused")
    alternating = G.subgroup([tau])
    recorder.check(quotient_group(G, alternating).order == 2, "quotient by A3 has order two")
    recorder.check(semiring_tag(G.subgroup([sigma])) == WHOLE_FIELD, "the pure cubic field is not totally real")

    H = G.subgroup([sigma])
    canonical = folding_data(G, H)
    recorder.check(canonical.transversal.reps == (e, tau, G.power(tau, 2)), "canonical transversal is the tau powers",
                   reps=[str(t) for t in canonical.transversal.reps])
    alternative = folding_data(G, H, [parse_element(G, token) for token in ("e", "ts", "t2")])
    for _ in range(samples):
        c = [random_element(context, rng, _height()) for _ in range(3)]
        # ℚ(α) elements have no ω component
        a = context.element([c[0].coords[0], 0, c[1].coords[0], 0, c[2].coords[0], 0])
        folded = fold_transversal(Matrix.scalar(a), canonical)[(0, 0)]
        where = {"a": encode_coords(a)}
        recorder.check(folded.is_scalar() and folded * folded == context.scalar(norm_full(a)),
                       "transversal fold of a cubic element is its cubic norm", **where)
        recorder.check(fold_transversal(Matrix.scalar(a), alternative)[(0, 0)] == folded,
                       "scalar folding ignores the choice of transversal", **where)
    try:
        fold_transversal(Matrix.scalar(omega), canonical)
        recorder.check(False, "non-fixed entries are refused")
    except NotEquivariantError:
        recorder.check(True, "non-fixed entries are refused")
    for Hsub in lattice:
        projector = decohere_map(2, G, Hsub)
        recorder.check(compose(projector, projector) == projector, "transversal decoherence is idempotent",
                       subgroup=Hsub.label())
    nonzero = random_nonzero_element(context, rng, _height())
    recorder.check((nonzero * nonzero.inverse()).is_one(), "sextic inverse", a=encode_coords(nonzero))


SUITES: Dict[str, SuiteFunction] = {
    "field-axioms": field_axioms,
    "norm-laws": norm_laws,
    "lattice-correspondence": lattice_correspondence,
    "folding-functoriality": folding_functoriality,
    "equivariance": equivariance,
    "factorization": factorization,
    "env-closure": env_closure,
    "dec-idempotence": dec_idempotence,
    "join-law": join_law,
    "scalar-formula": scalar_formula,
    "cyclo5-soundness": cyclo5_soundness,
    "cyclo7-soundness": cyclo7_soundness,
    "completeness-search": completeness_search,
    "finite-field-exhaustive": finite_field_exhaustive,
    "s3-transversal": s3_transversal,
}

# Per-suite sample counts that reach the full acceptance sizes:
# 500 field-axiom draws, 100 equivariance draws, 50 factorization draws
ACCEPTANCE_SAMPLES: Dict[str, int] = {
    "field-axioms": 500,
    "norm-laws": 200,
    "lattice-correspondence": 50,
    "folding-functoriality": 250,
    "equivariance": 100,
    "factorization": 50,
    "env-closure": 50,
    "dec-idempotence": 50,
    "join-law": 1,
    "scalar-formula": 100,
    "cyclo5-soundness": 100,
    "cyclo7-soundness": 100,
    "completeness-search": 1,
    "finite-field-exhaustive": 50,
    "s3-transversal": 50,
}


class VerificationRunner:
    """Runs named suites and returns their reports in registry order"""

    def __init__(self, samples: Optional[int] = None, workers: Optional[int] = None,
                 acceptance: Optional[bool] = None):
        self.samples = appSettings.verify_samples if samples is None else samples
        self.workers = appSettings.verify_workers if workers is None else workers
        self.acceptance = appSettings.verify_acceptance if acceptance is None else acceptance

    def samples_for(self, name: str) -> int:
        if self.acceptance:
            return ACCEPTANCE_SAMPLES.get(name, self.samples)
        return self.samples

    def run_suite(self, name: str, seed: int) -> VerificationReport:
        recorder = SuiteRecorder(name)
        rng = random.Random(f"{seed}:{name}")
        started = time.perf_counter()
        logger.info(f"🔄 Running suite {name} (seed {seed})")
        try:
            SUITES[name](recorder, rng, self.samples_for(name))
        except Exception as suiteError:
            logger.error(f"❌ Suite {name} raised: {suiteError}")
            recorder.failures.append({"case": "suite raised", "error": f"{type(suiteError).__name__}: {suiteError}"})
        elapsed = time.perf_counter() - started
        report = VerificationReport(
            suite=name,
            casesRun=recorder.casesRun,
            failures=recorder.failures,
            seed=seed,
            elapsedSeconds=round(elapsed, 3),
        )
        logger.info(f"{'✅' if report.passed else '❌'} {name}: {report.casesRun} cases, "
                    f"{len(report.failures)} failures in {report.elapsedSeconds}s")
        return report

    def run(self, seed: Optional[int] = None, suites: Optional[Sequence[str]] = None) -> List[VerificationReport]:
        seed = appSettings.default_seed if seed is None else seed
        names = [name for name in SUITES if suites is None or name in suites]
        if self.workers <= 1:
            return [self.run_suite(name, seed) for name in names]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(lambda name: self.run_suite(name, seed), names))


def verify_all(seed: Optional[int] = None, suites: Optional[Sequence[str]] = None,
               samples: Optional[int] = None, workers: Optional[int] = None,
               acceptance: Optional[bool] = None) -> List[VerificationReport]:
    return VerificationRunner(samples, workers, acceptance).run(seed, suites)
