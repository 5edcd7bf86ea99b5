import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence

from src.core.codec import encode_coords, encode_element, encode_matrix, format_rational, parse_rational
from src.core.errors import GaloisCpmError, UnsupportedFieldError
from src.core.exact_fields import (
    FieldContext,
    FiniteFieldContext,
    cyc_context,
    ff_context,
    ff_norm_image,
    ff_subfield_elements,
    field_context,
    is_totally_positive,
    min_poly,
    norm_full,
    norm_rel,
)
from src.core.galois_groups import (
    GaloisGroup,
    Subgroup,
    all_subgroups,
    finite_fixed_field,
    fixed_field,
    galois_group,
    parse_element,
)
from src.core.mat_category import Matrix
from src.services.cpm import (
    cpm_morphism,
    decohere_map,
    discard_map,
    nested_norm_formula,
    semiring_tag,
    sum_of_norms_search,
)
from src.services.expression_parser import parse_element_expression
from src.services.folding import fold_complete, fold_transversal, folding_data
from src.services.guardrails import CommandGuardrails

logger = logging.getLogger(__name__)


def _gvquote(text: str) -> str:
    return '"{}"'.format(text.replace('"', r'\"'))


class GaloisTheoryService:
    """Runs one CLI verb against a Galois theory and returns a result dictionary"""

    def __init__(self):
        self.guardrails = CommandGuardrails()

    # ---------------------------------------------------------
    # Theory construction
    # ---------------------------------------------------------

    def resolve_context(self, conductor: Optional[int] = None, fieldSpec: Optional[str] = None) -> FieldContext:
        if fieldSpec:
            validation = self.guardrails.validate_field_spec(fieldSpec)
            if not validation["isValid"]:
                raise UnsupportedFieldError(validation["reason"])
            return field_context(fieldSpec)
        validation = self.guardrails.validate_conductor(conductor)
        if not validation["isValid"]:
            raise UnsupportedFieldError(validation["reason"])
        return cyc_context(conductor)

    def resolve_subgroup(self, G: GaloisGroup, tokens: Optional[Sequence[str]]) -> Subgroup:
        """No tokens means the whole group; an empty token list means the trivial group"""
        if tokens is None:
            return G.full()
        cleaned = [token.strip() for token in tokens if token.strip()]
        validation = self.guardrails.validate_group_tokens(cleaned)
        if not validation["isValid"]:
            raise UnsupportedFieldError(validation["reason"])
        return G.subgroup(parse_element(G, token) for token in cleaned)

    # ---------------------------------------------------------
    # Lattice
    # ---------------------------------------------------------

    def describe_subgroup(self, H: Subgroup) -> Dict[str, Any]:
        G = H.parent
        node: Dict[str, Any] = {
            "generators": H.label(),
            "order": H.order,
            "fixedFieldDegree": H.index,
            "normal": H.is_normal(),
        }
        if isinstance(G.context, FiniteFieldContext):
            order, degree = finite_fixed_field(H)
            node["fixedField"] = f"GF({order})"
            node["real"] = False
        else:
            fixed = fixed_field(H)
            node["fixedField"] = str(fixed.min_poly)
            node["primitive"] = str(fixed.primitive)
            node["discriminant"] = format_rational(fixed.min_poly.discriminant())
            node["real"] = fixed.is_real()
        node["semiring"] = semiring_tag(H)
        return node

    def emit_lattice(self, context: FieldContext, outputFormat: str = "json") -> Dict[str, Any]:
        try:
            G = galois_group(context)
            lattice = all_subgroups(G)
            nodes = [self.describe_subgroup(H) for H in lattice]
            position = {H: i for i, H in enumerate(lattice)}
            edges = [[position[H], position[K]] for H, K in lattice.covers()]
            logger.info(f"✅ Lattice of {context}: {len(nodes)} subgroups, {len(edges)} covering edges")
            result = {
                "success": True,
                "field": context.spec(),
                "groupOrder": G.order,
                "nodes": nodes,
                "edges": edges,
            }
            if outputFormat == "dot":
                result["text"] = "".join(self._lattice_dot(nodes, edges))
            return result
        except GaloisCpmError as latticeError:
            logger.error(f"❌ Lattice construction failed: {latticeError}")
            return {"success": False, "error": str(latticeError)}

    def _lattice_dot(self, nodes: List[Dict[str, Any]], edges: List[List[int]]) -> Iterator[str]:
        yield "graph lattice {\n"
        yield "  rankdir=BT;\n"
        for i, node in enumerate(nodes):
            label = "{}\\n|H|={}\\nFix: {}\\n{}".format(
                node["generators"], node["order"], node["fixedField"], node["semiring"]
            )
            yield "  n{} [label={}];\n".format(i, _gvquote(label))
        for lower, upper in edges:
            yield "  n{} -- n{};\n".format(lower, upper)
        yield "}\n"

    # ---------------------------------------------------------
    # Folding, decoherence, scalars
    # ---------------------------------------------------------

    def fold(self, matrix: Matrix, subgroupTokens: Optional[Sequence[str]] = None,
             transversalTokens: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        try:
            G = galois_group(matrix.context)
            if subgroupTokens is None and transversalTokens is None:
                folded = fold_complete(matrix, G)
                mode = "complete"
            else:
                H = self.resolve_subgroup(G, subgroupTokens or [])
                reps = None
                if transversalTokens is not None:
                    reps = [parse_element(G, token) for token in transversalTokens if token.strip()]
                folded = fold_transversal(matrix, folding_data(G, H, reps))
                mode = "transversal"
            logger.info(f"✅ Folded {matrix.rows}x{matrix.cols} to {folded.rows}x{folded.cols} ({mode})")
            return {"success": True, "mode": mode, "matrix": encode_matrix(folded)}
        except GaloisCpmError as foldError:
            logger.error(f"❌ Folding failed: {foldError}")
            return {"success": False, "error": str(foldError)}

    def decohere(self, context: FieldContext, subgroupTokens: Optional[Sequence[str]], dim: int) -> Dict[str, Any]:
        try:
            G = galois_group(context)
            validation = self.guardrails.validate_dimension(dim, G.order)
            if not validation["isValid"]:
                return {"success": False, "error": validation["reason"]}
            H = self.resolve_subgroup(G, subgroupTokens)
            projector = decohere_map(dim, G, H)
            rank = sum(1 for i in range(projector.rows) if not projector[(i, i)].is_zero())
            return {
                "success": True,
                "subgroup": H.label(),
                "rank": rank,
                "matrix": encode_matrix(projector),
            }
        except GaloisCpmError as decohereError:
            logger.error(f"❌ Decoherence failed: {decohereError}")
            return {"success": False, "error": str(decohereError)}

    def discard(self, context: FieldContext, subgroupTokens: Optional[Sequence[str]], dim: int) -> Dict[str, Any]:
        try:
            G = galois_group(context)
            validation = self.guardrails.validate_dimension(dim, G.order)
            if not validation["isValid"]:
                return {"success": False, "error": validation["reason"]}
            H = self.resolve_subgroup(G, subgroupTokens)
            effect = discard_map(dim, G, H)
            ones = sum(1 for entry in effect.realized.iter_entries() if entry.is_one())
            return {
                "success": True,
                "subgroup": H.label(),
                "support": ones,
                "matrix": encode_matrix(effect.realized),
            }
        except GaloisCpmError as discardError:
            logger.error(f"❌ Discard construction failed: {discardError}")
            return {"success": False, "error": str(discardError)}

    def scalar(self, state: Matrix, subgroupTokens: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        """Scalar obtained by discarding a state |v⟩ through the subgroup's effect"""
        try:
            if state.cols != 1:
                return {"success": False, "error": f"state must be a column vector, got {state.rows}x{state.cols}"}
            G = galois_group(state.context)
            validation = self.guardrails.validate_dimension(state.rows, G.order)
            if not validation["isValid"]:
                return {"success": False, "error": validation["reason"]}
            Lambda = self.resolve_subgroup(G, subgroupTokens)
            morphism = cpm_morphism(state, 1, [(state.rows, Lambda)], G)
            value = morphism.realized[(0, 0)]
            formula = nested_norm_formula([state[(i, 0)] for i in range(state.rows)], Lambda)
            logger.info(f"🔍 CPM scalar {value} against nested norm {formula}")
            return {
                "success": True,
                "subgroup": Lambda.label(),
                "scalar": encode_element(value),
                "nestedNorm": encode_element(formula),
                "agrees": value == formula,
            }
        except GaloisCpmError as scalarError:
            logger.error(f"❌ Scalar computation failed: {scalarError}")
            return {"success": False, "error": str(scalarError)}

    # ---------------------------------------------------------
    # Elements
    # ---------------------------------------------------------

    def parse_expression(self, context: FieldContext, expression: str):
        validation = self.guardrails.validate_expression(expression)
        if not validation["isValid"]:
            raise UnsupportedFieldError(validation["reason"])
        return parse_element_expression(expression, context)

    def norm(self, context: FieldContext, expression: str, subgroupTokens: Optional[Sequence[str]] = None) -> Dict[str, Any]:
        try:
            element = self.parse_expression(context, expression)
            result: Dict[str, Any] = {
                "success": True,
                "element": encode_element(element),
                "norm": format_rational(norm_full(element)),
            }
            if subgroupTokens is not None:
                G = galois_group(context)
                H = self.resolve_subgroup(G, subgroupTokens)
                result["subgroup"] = H.label()
                result["relativeNorm"] = encode_element(norm_rel(element, H))
            return result
        except GaloisCpmError as normError:
            logger.error(f"❌ Norm computation failed: {normError}")
            return {"success": False, "error": str(normError)}

    def total_positivity(self, context: FieldContext, expression: str) -> Dict[str, Any]:
        try:
            element = self.parse_expression(context, expression)
            polynomial = min_poly(element)
            return {
                "success": True,
                "element": encode_element(element),
                "minPoly": str(polynomial),
                "realRoots": polynomial.real_root_count(),
                "totallyPositive": is_totally_positive(element),
            }
        except GaloisCpmError as positivityError:
            logger.error(f"❌ Total positivity check failed: {positivityError}")
            return {"success": False, "error": str(positivityError)}

    def finite_field(self, p: int, m: int, baseDegree: int) -> Dict[str, Any]:
        try:
            context = ff_context(p, m)
            image = ff_norm_image(context, baseDegree)
            baseField = set(ff_subfield_elements(context, baseDegree))
            surjective = image == baseField
            logger.info(f"{'✅' if surjective else '❌'} GF({p}^{m})/GF({p}^{baseDegree}) norm image size {len(image)}")
            return {
                "success": True,
                "field": context.spec(),
                "modulus": list(context.modulus),
                "baseDegree": baseDegree,
                "image": sorted(encode_coords(a) for a in image),
                "imageSize": len(image),
                "surjective": surjective,
            }
        except GaloisCpmError as finiteFieldError:
            logger.error(f"❌ Finite field report failed: {finiteFieldError}")
            return {"success": False, "error": str(finiteFieldError)}

    def search(self, context: FieldContext, targetText: str, subgroupTokens: Optional[Sequence[str]],
               heightBound: int, termBound: int) -> Dict[str, Any]:
        try:
            validation = self.guardrails.validate_search_bounds(heightBound, termBound)
            if not validation["isValid"]:
                return {"success": False, "error": validation["reason"]}
            rationalCheck = self.guardrails.validate_rational(targetText)
            if rationalCheck["isValid"]:
                target = context.scalar(parse_rational(targetText))
            else:
                target = self.parse_expression(context, targetText)
            G = galois_group(context)
            H = self.resolve_subgroup(G, subgroupTokens)
            logger.info(f"🔄 Searching sums of norms for {target} over {H.label()}")
            outcome = sum_of_norms_search(target, H, heightBound, termBound)
            result: Dict[str, Any] = {
                "success": True,
                "target": encode_element(target),
                "subgroup": H.label(),
                "found": outcome.found,
                "statesExplored": outcome.statesExplored,
                "truncated": outcome.truncated,
            }
            if outcome.found:
                result["witnesses"] = [encode_coords(a) for a in outcome.witnesses]
                result["witnessText"] = [str(a) for a in outcome.witnesses]
            return result
        except GaloisCpmError as searchError:
            logger.error(f"❌ Search failed: {searchError}")
            return {"success": False, "error": str(searchError)}
