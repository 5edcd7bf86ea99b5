"""Galois groups as explicit finite groups acting on a field context."""
import functools
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.config.settings import appSettings
from src.core.errors import (
    FixedFieldSearchError,
    GroupOrderBoundError,
    InvalidTransversalError,
    NotInGroupError,
    NotNormalSubgroupError,
    SubgroupMismatchError,
    UnsupportedFieldError,
)
from src.core.exact_fields import (
    CyclotomicContext,
    FieldContext,
    FieldElement,
    FiniteFieldContext,
    QuadraticContext,
    SexticS3Context,
    apply_aut,
    cyc_context,
    min_poly,
)
from src.core.polynomials import RationalPolynomial

logger = logging.getLogger(__name__)

GroupElement = Hashable


@dataclass(frozen=True)
class Coset:
    """Left coset gH, labelled by its canonical representative"""
    rep: GroupElement
    members: FrozenSet[GroupElement]

    def __eq__(self, other):
        return isinstance(other, Coset) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __str__(self):
        return f"[{self.rep}]"


class GaloisGroup:
    """Finite group with a canonical element order and an action on field elements"""

    def __init__(self, context: FieldContext, elements: Sequence[GroupElement],
                 multiply: Callable[[GroupElement, GroupElement], GroupElement],
                 act: Optional[Callable[[FieldElement, GroupElement], FieldElement]] = None,
                 key: Optional[tuple] = None):
        self.context = context
        self.elements: Tuple[GroupElement, ...] = tuple(elements)
        self.identity = self.elements[0]
        self._index: Dict[GroupElement, int] = {g: i for i, g in enumerate(self.elements)}
        self._table: Dict[Tuple[GroupElement, GroupElement], GroupElement] = {
            (g, h): multiply(g, h) for g in self.elements for h in self.elements
        }
        self._inverse = {g: next(h for h in self.elements if self._table[(g, h)] == self.identity) for g in self.elements}
        self._act = act or apply_aut
        self.key = key or ("galois",) + context.key

    def __eq__(self, other):
        return isinstance(other, GaloisGroup) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._index

    def __repr__(self):
        return f"GaloisGroup({self.context}, order={len(self)})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def require(self, g: GroupElement) -> GroupElement:
        if g not in self._index:
            raise NotInGroupError(f"{g!r} is not an element of {self!r}")
        return g

    def index(self, g: GroupElement) -> int:
        """Position of g in the canonical order"""
        return self._index[self.require(g)]

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self._table[(self.require(g), self.require(h))]

    def inverse(self, g: GroupElement) -> GroupElement:
        return self._inverse[self.require(g)]

    def power(self, g: GroupElement, k: int) -> GroupElement:
        result = self.identity
        base = g if k >= 0 else self.inverse(g)
        for _ in range(abs(k)):
            result = self.mul(result, base)
        return result

    def element_order(self, g: GroupElement) -> int:
        k, current = 1, self.require(g)
        while current != self.identity:
            current = self.mul(current, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.mul(g, h) == self.mul(h, g) for g in self.elements for h in self.elements)

    def act(self, a: FieldElement, g: GroupElement) -> FieldElement:
        return self._act(a, self.require(g))

    def closure(self, generators: Iterable[GroupElement]) -> FrozenSet[GroupElement]:
        members = {self.identity}
        frontier = [self.require(g) for g in generators]
        while frontier:
            g = frontier.pop()
            if g in members:
                continue
            members.add(g)
            for h in list(members):
                for product in (self.mul(g, h), self.mul(h, g)):
                    if product not in members:
                        frontier.append(product)
        return frozenset(members)

    def subgroup(self, generators: Iterable[GroupElement] = ()) -> "Subgroup":
        return Subgroup(self, self.closure(generators))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset({self.identity}))

    def full(self) -> "Subgroup":
        return Subgroup(self, frozenset(self.elements))


@dataclass(frozen=True)
class Subgroup:
    parent: GaloisGroup
    members: FrozenSet[GroupElement]

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.sorted_members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g) -> bool:
        return g in self.members

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def sorted_members(self) -> Tuple[GroupElement, ...]:
        return tuple(g for g in self.parent.elements if g in self.members)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.parent == other.parent and self.members <= other.members

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.mul(G.mul(g, h), G.inverse(g)) in self.members for g in G for h in self.members)

    def as_group(self) -> GaloisGroup:
        """The subgroup as a group in its own right, same action and element order"""
        G = self.parent
        return GaloisGroup(G.context, self.sorted_members, G.mul, G.act, key=G.key + ("subgroup", self.members))

    def generators(self) -> List[GroupElement]:
        """Greedy generating list in canonical order; empty for the trivial group"""
        chosen: List[GroupElement] = []
        span = frozenset({self.parent.identity})
        for g in self.sorted_members:
            if g not in span:
                chosen.append(g)
                span = self.parent.closure(chosen)
        return chosen

    def label(self) -> str:
        gens = self.generators()
        if not gens:
            return "{e}"
        return "<" + ",".join(format_element(self.parent, g) for g in gens) + ">"

    def __repr__(self):
        return f"Subgroup({self.label()}, order={self.order})"


# ---------------------------------------------------------
# Groups of the supported contexts
# ---------------------------------------------------------

@functools.lru_cache(maxsize=None)
def galois_group(context: FieldContext) -> GaloisGroup:
    return GaloisGroup(context, context.group_elements(), context.group_multiply)


def unit_group(n: int) -> GaloisGroup:
    """(ℤ/nℤ)ˣ acting on ℚ(ζₙ)"""
    return galois_group(cyc_context(n))


def format_element(G: GaloisGroup, g: GroupElement) -> str:
    context = G.context
    if isinstance(g, Coset):
        return f"[{format_element(galois_group(context), g.rep)}]"
    if isinstance(context, SexticS3Context):
        a, b = g
        word = ("t" if a == 1 else f"t{a}" if a else "") + ("s" if b else "")
        return word or "e"
    if isinstance(context, FiniteFieldContext):
        return f"F{g}"
    return str(g)


def parse_element(G: GaloisGroup, text: str) -> GroupElement:
    """Inverse of format_element; sextic words are τ-power then σ, e.g. 't2s'"""
    token = text.strip()
    context = G.context
    try:
        if isinstance(context, SexticS3Context):
            if token == "e":
                return G.require((0, 0))
            b = 1 if token.endswith("s") else 0
            body = token[:-1] if b else token
            if body == "":
                a = 0
            elif body == "t":
                a = 1
            elif body.startswith("t"):
                a = int(body[1:]) % 3
            else:
                raise ValueError(token)
            return G.require((a, b))
        if isinstance(context, FiniteFieldContext):
            return G.require(int(token[1:] if token.upper().startswith("F") else token))
        return G.require(int(token))
    except ValueError:
        raise NotInGroupError(f"cannot read group element {text!r}")


# ---------------------------------------------------------
# Subgroup lattice
# ---------------------------------------------------------

def join(H: Subgroup, K: Subgroup) -> Subgroup:
    if H.parent != K.parent:
        raise SubgroupMismatchError("join of subgroups with different parents")
    return Subgroup(H.parent, H.parent.closure(H.members | K.members))


def meet(H: Subgroup, K: Subgroup) -> Subgroup:
    if H.parent != K.parent:
        raise SubgroupMismatchError("meet of subgroups with different parents")
    return Subgroup(H.parent, H.members & K.members)


class SubgroupLattice:
    """All subgroups of a group, ordered by (order, canonical member positions)"""

    def __init__(self, group: GaloisGroup, subgroups: Iterable[Subgroup]):
        self.group = group
        self.subgroups: List[Subgroup] = sorted(
            set(subgroups), key=lambda S: (S.order, [group.index(g) for g in S.sorted_members])
        )

    def __iter__(self):
        return iter(self.subgroups)

    def __len__(self):
        return len(self.subgroups)

    def includes(self, H: Subgroup, K: Subgroup) -> bool:
        return H.is_subgroup_of(K)

    def join(self, H: Subgroup, K: Subgroup) -> Subgroup:
        return join(H, K)

    def meet(self, H: Subgroup, K: Subgroup) -> Subgroup:
        return meet(H, K)

    def covers(self) -> List[Tuple[Subgroup, Subgroup]]:
        """Pairs (H, K) with H ⊂ K and nothing strictly between them"""
        pairs = []
        for H in self.subgroups:
            for K in self.subgroups:
                if H == K or not H.is_subgroup_of(K):
                    continue
                between = any(
                    M != H and M != K and H.is_subgroup_of(M) and M.is_subgroup_of(K) for M in self.subgroups
                )
                if not between:
                    pairs.append((H, K))
        return pairs


def all_subgroups(G: GaloisGroup, bound: Optional[int] = None) -> SubgroupLattice:
    """Every subgroup, as joins of cyclic subgroups closed under further joins"""
    limit = bound if bound is not None else appSettings.max_group_order
    if G.order > limit:
        raise GroupOrderBoundError(f"group of order {G.order} exceeds the bound {limit}")
    found = {G.subgroup([g]) for g in G}
    frontier = list(found)
    while frontier:
        H = frontier.pop()
        for K in list(found):
            J = join(H, K)
            if J not in found:
                found.add(J)
                frontier.append(J)
    logger.debug(f"{len(found)} subgroups of {G!r}")
    return SubgroupLattice(G, found)


# ---------------------------------------------------------
# Cosets, transversals, quotients
# ---------------------------------------------------------

@dataclass(frozen=True)
class Transversal:
    subgroup: Subgroup
    reps: Tuple[GroupElement, ...]

    def __len__(self):
        return len(self.reps)

    def coset_of(self, g: GroupElement) -> int:
        """Position of the representative t with g ∈ tH"""
        G = self.subgroup.parent
        for position, t in enumerate(self.reps):
            if G.mul(G.inverse(t), g) in self.subgroup.members:
                return position
        raise InvalidTransversalError(f"{g!r} lies in no coset of the transversal")


def left_cosets(G: GaloisGroup, H: Subgroup) -> List[FrozenSet[GroupElement]]:
    seen = set()
    cosets = []
    for g in G:
        if g in seen:
            continue
        coset = frozenset(G.mul(g, h) for h in H.members)
        seen |= coset
        cosets.append(coset)
    return cosets


def left_transversal(G: GaloisGroup, H: Subgroup) -> Transversal:
    """Least element of each left coset, in canonical order (identity first)"""
    return Transversal(H, tuple(min(coset, key=G.index) for coset in left_cosets(G, H)))


def make_transversal(G: GaloisGroup, H: Subgroup, reps: Sequence[GroupElement]) -> Transversal:
    """Validate user-supplied representatives; they are stored in canonical order.

    The identity must represent H itself.
    """
    ordered = tuple(sorted((G.require(t) for t in reps), key=G.index))
    if G.identity not in ordered:
        raise InvalidTransversalError(f"{list(reps)} has no identity representative for {H.label()}")
    hit = [frozenset(G.mul(t, h) for h in H.members) for t in ordered]
    if len(set(hit)) != len(hit) or len(hit) != H.index:
        raise InvalidTransversalError(f"{list(reps)} is not a left transversal of {H.label()}")
    return Transversal(H, ordered)


def quotient_group(G: GaloisGroup, H: Subgroup) -> GaloisGroup:
    """G/H acting on Fix(H) through coset representatives"""
    if H.parent != G:
        raise SubgroupMismatchError("subgroup does not belong to the group")
    if not H.is_normal():
        raise NotNormalSubgroupError(f"{H.label()} is not normal in {G!r}")
    transversal = left_transversal(G, H)
    cosets = {t: Coset(t, frozenset(G.mul(t, h) for h in H.members)) for t in transversal.reps}

    def coset_of(g):
        return cosets[transversal.reps[transversal.coset_of(g)]]

    def multiply(x: Coset, y: Coset) -> Coset:
        return coset_of(G.mul(x.rep, y.rep))

    def act(a: FieldElement, x: Coset) -> FieldElement:
        return G.act(a, x.rep)

    return GaloisGroup(G.context, [cosets[t] for t in transversal.reps], multiply, act,
                       key=G.key + ("quotient", H.members))


# ---------------------------------------------------------
# Fixed fields
# ---------------------------------------------------------

@dataclass(frozen=True)
class FixedField:
    primitive: FieldElement
    min_poly: RationalPolynomial

    @property
    def degree(self) -> int:
        return self.min_poly.degree

    def is_real(self) -> bool:
        return self.min_poly.is_totally_real()


def is_fixed_by(a: FieldElement, H: Subgroup) -> bool:
    return all(H.parent.act(a, h) == a for h in H.members)


def _primitive_generator(context: FieldContext) -> FieldElement:
    if isinstance(context, CyclotomicContext):
        return context.generators()["z"]
    if isinstance(context, QuadraticContext):
        return context.generators()["z"]
    if isinstance(context, SexticS3Context):
        gens = context.generators()
        return gens["a"] + gens["w"]
    raise UnsupportedFieldError(f"fixed_field is not available for {context}; use finite_fixed_field")


def _fixed_field_candidates(H: Subgroup, theta: FieldElement, height: int) -> Iterator[FieldElement]:
    G = H.parent

    def period(x):
        total = x.context.zero()
        for h in H:
            total = total + G.act(x, h)
        return total

    powerCount = max(getattr(theta.context, "conductor", 0) - 1, G.order)
    periods = []
    x = theta
    for _ in range(powerCount):
        periods.append(period(x))
        yield periods[-1]
        x = x * theta
    product = theta.context.one()
    for h in H:
        product = product * G.act(theta, h)
    yield product
    periods.append(product)
    coefficients = [c for c in range(-height, height + 1) if c]
    for first, second in itertools.combinations(range(len(periods)), 2):
        for c1 in coefficients:
            for c2 in coefficients:
                yield c1 * periods[first] + c2 * periods[second]


def fixed_field(H: Subgroup, height: Optional[int] = None) -> FixedField:
    """Primitive element of Fix(H) and its minimal polynomial.

    The Gaussian period Σ_h h(θ) is tried first; when its degree is short of
    [G:H], periods of powers of θ, the orbit product and small integer
    combinations of pairs of those are tried in order.
    """
    G = H.parent
    if isinstance(G.identity, Coset):
        raise UnsupportedFieldError("fixed fields are computed in the full Galois group")
    theta = _primitive_generator(G.context)
    target = H.index
    bound = appSettings.fixed_field_search_height if height is None else height
    for candidate in _fixed_field_candidates(H, theta, bound):
        polynomial = min_poly(candidate)
        if polynomial.degree == target:
            logger.debug(f"Fix({H.label()}) generated by {candidate} with min poly {polynomial}")
            return FixedField(candidate, polynomial)
    raise FixedFieldSearchError(f"no primitive element for Fix({H.label()}) within height {bound}")


def finite_fixed_field(H: Subgroup) -> Tuple[int, int]:
    """(order, degree) of the subfield of GF(p^m) fixed by a Frobenius subgroup"""
    context = H.parent.context
    if not isinstance(context, FiniteFieldContext):
        raise UnsupportedFieldError(f"{context} is not a finite field")
    degree = context.extension_degree // H.order
    return context.characteristic ** degree, degree

