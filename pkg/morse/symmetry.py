"""
Automorphism groups of complexes and the order comparison for Morse
complexes of disjoint unions.
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from config import symmetry_config
from core.complex import (
    SimplicialComplex,
    are_isomorphic,
    bits,
    dimension,
    disjoint_union,
    graph_degrees,
    induced_subcomplex,
    is_connected,
    mask_of,
    popcount,
    prune_to_facets,
)
from core.errors import BadSubset, ConsistencyError, HypothesisViolation, SizeLimit
from core.isomorphism import automorphism_search
from core.schemas import GroupPayload, ProductReport
from .builder import morse_complex

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


def _apply(perm: Permutation, mask: int) -> int:
    """Image of a simplex under a vertex permutation."""
    out = 0
    for v in bits(mask):
        out |= 1 << perm[v]
    return out


def _compose(a: Permutation, b: Permutation) -> Permutation:
    """a after b."""
    return tuple(a[i] for i in b)


def preserves_facets(K: SimplicialComplex, perm: Permutation) -> bool:
    """Whether perm maps the facet set of K onto itself."""
    return {_apply(perm, f) for f in K.facets} == set(K.facets)


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: Tuple[Permutation, ...]
    order: int

    def to_payload(self, labels: Sequence[str]) -> GroupPayload:
        return GroupPayload(order=self.order, generators=[list(g) for g in self.generators], vertices=list(labels))


class AutomorphismCalculator:
    """Automorphism groups of complexes, bounded by vertex count and group order."""

    def __init__(self, vertex_bound: Optional[int] = None, order_cap: Optional[int] = None):
        self.vertex_bound = vertex_bound if vertex_bound is not None else symmetry_config.AUT_VERTEX_BOUND
        self.order_cap = order_cap if order_cap is not None else symmetry_config.GROUP_ORDER_CAP

    def _generators(self, K: SimplicialComplex) -> Tuple[List[Permutation], List[int]]:
        """
        Strong generating set along the base 0..n-1, deepest level first.
        Returns the generators and the basic orbit sizes.
        """
        n = K.n_vertices
        _, search = automorphism_search(n, K.facets)
        generators: List[Permutation] = []
        orbit_sizes = [1] * n
        for i in range(n - 1, -1, -1):
            prefix = {j: j for j in range(i)}
            # Generators so far that fix 0..i-1 pointwise
            level = [g for g in generators if all(g[j] == j for j in range(i))]
            orbit = self._orbit(i, level)
            for w in range(n):
                if w in orbit:
                    continue
                # Least automorphism fixing 0..i-1 and sending i to w
                mapping = search.search({**prefix, i: w})
                if mapping is None:
                    continue
                perm = tuple(mapping[v] for v in range(n))
                generators.append(perm)
                level.append(perm)
                orbit = self._orbit(i, level)
            orbit_sizes[i] = len(orbit)
        return generators, orbit_sizes

    @staticmethod
    def _orbit(point: int, generators: List[Permutation]) -> set:
        """Orbit of point under the group the generators span, by BFS."""
        orbit = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in generators:
                if g[x] not in orbit:
                    orbit.add(g[x])
                    queue.append(g[x])
        return orbit

    def _closure_order(self, n: int, generators: List[Permutation]) -> int:
        """Group order by enumerating every product of generators; capped at order_cap."""
        identity = tuple(range(n))
        seen = {identity}
        queue = deque([identity])
        while queue:
            element = queue.popleft()
            for g in generators:
                product = _compose(g, element)
                if product not in seen:
                    seen.add(product)
                    if len(seen) > self.order_cap:
                        raise SizeLimit(f"Automorphism group exceeds {self.order_cap} elements")
                    queue.append(product)
        return len(seen)

    def calculate_automorphism_group(self, K: SimplicialComplex) -> PermutationGroup:
        try:
            if K.n_vertices > self.vertex_bound:
                raise SizeLimit(
                    f"{K.n_vertices} vertices exceeds the automorphism bound of {self.vertex_bound}"
                )
            generators, orbit_sizes = self._generators(K)
            # Every generator must be a genuine automorphism
            for g in generators:
                if not preserves_facets(K, g):
                    raise ConsistencyError(f"Generator {g} does not preserve the facets")
            order = self._closure_order(K.n_vertices, generators)
            # Two independent counts of the same group must agree
            expected = 1
            for size in orbit_sizes:
                expected *= size
            if order != expected:
                raise ConsistencyError(f"Closure order {order} disagrees with orbit product {expected}")
            logger.info(f"Automorphism group: order {order}, {len(generators)} generators")
            return PermutationGroup(K.n_vertices, tuple(generators), order)
        except Exception as e:
            logger.error(f"Error calculating automorphism group: {str(e)}")
            raise


def automorphism_group(
    K: SimplicialComplex, vertex_bound: Optional[int] = None, order_cap: Optional[int] = None
) -> PermutationGroup:
    return AutomorphismCalculator(vertex_bound, order_cap).calculate_automorphism_group(K)


def _restrict(K: SimplicialComplex, keep: int) -> frozenset:
    """Facets of the induced subcomplex on the vertex mask keep."""
    return prune_to_facets(f & keep for f in K.facets if f & keep)


def _fully_connected_mask(K: SimplicialComplex, inside: int) -> bool:
    """Whether K is the join of its restrictions to inside and to the rest."""
    outside = ((1 << K.n_vertices) - 1) & ~inside
    left, right = _restrict(K, inside), _restrict(K, outside)
    return {a | b for a in left for b in right} == set(K.facets)


def is_fully_connected(K: SimplicialComplex, U) -> bool:
    """
    Whether K equals the join of its restrictions to U and to the other
    vertices. K always lies inside that join, so isomorphism fixing U
    setwise reduces to this equality.
    """
    inside = mask_of(K.vertex_id(v) for v in U)
    if not inside:
        raise BadSubset("U must be nonempty")
    if inside == (1 << K.n_vertices) - 1:
        raise BadSubset("U must be a proper subset of the vertices")
    return _fully_connected_mask(K, inside)


def fully_connected_subsets(K: SimplicialComplex, bound: int, include_whole: bool = False) -> Iterator[int]:
    """Vertex masks of fully connected subcomplexes with at most bound vertices."""
    n = K.n_vertices
    for size in range(1, min(bound, n - 1) + 1):
        for ids in combinations(range(n), size):
            mask = mask_of(ids)
            if _fully_connected_mask(K, mask):
                yield mask
    if include_whole and n <= bound:
        yield (1 << n) - 1


def join_automorphism(a: Permutation, b: Permutation, n_first: int) -> Permutation:
    """Automorphism of K * L acting as a on K and b on L."""
    return tuple(a) + tuple(x + n_first for x in b)


def is_cycle_graph(K: SimplicialComplex) -> bool:
    """Connected graph with every degree two."""
    return (
        dimension(K) == 1
        and K.n_vertices >= 3
        and all(popcount(f) == 2 for f in K.facets)
        and is_connected(K)
        and all(d == 2 for d in graph_degrees(K))
    )


def is_simplex_boundary(K: SimplicialComplex) -> bool:
    """n vertices and n facets of n - 1 vertices each."""
    n = K.n_vertices
    return n >= 2 and len(K.facets) == n and all(popcount(f) == n - 1 for f in K.facets)


def _check_hypotheses(K: SimplicialComplex, name: str) -> None:
    """Reject inputs outside the range where the order prediction is stated."""
    if not is_connected(K):
        raise HypothesisViolation(f"{name} must be connected")
    if dimension(K) < 1:
        raise HypothesisViolation(f"{name} must have at least one edge")
    if is_cycle_graph(K) or is_simplex_boundary(K):
        raise HypothesisViolation(f"{name} must not be a cycle or a simplex boundary")


def _find_exception(M1: SimplicialComplex, M2: SimplicialComplex, bound: int) -> Optional[Tuple[List[str], List[str]]]:
    """First pair of isomorphic fully connected subcomplexes of M1 and M2, as label lists."""
    # M2 side is built once
    second = [(mask, induced_subcomplex(M2, bits(mask))) for mask in fully_connected_subsets(M2, bound, True)]
    for mask1 in fully_connected_subsets(M1, bound, True):
        U1 = induced_subcomplex(M1, bits(mask1))
        for mask2, U2 in second:
            if are_isomorphic(U1, U2) is not None:
                return list(M1.simplex_labels(mask1)), list(M2.simplex_labels(mask2))
    return None


def product_order_check(
    K1: SimplicialComplex,
    K2: SimplicialComplex,
    search_bound: Optional[int] = None,
    vertex_bound: Optional[int] = None,
) -> ProductReport:
    """
    Compare |Aut(M(K1 + K2))| with |Aut(K1)| * |Aut(K2)|. They are predicted
    equal unless M(K1) and M(K2) have isomorphic fully connected
    subcomplexes, searched up to search_bound vertices.
    """
    bound = search_bound if search_bound is not None else symmetry_config.EXCEPTION_SEARCH_BOUND
    _check_hypotheses(K1, "K1")
    _check_hypotheses(K2, "K2")
    calculator = AutomorphismCalculator(vertex_bound)
    try:
        M1 = morse_complex(K1).complex
        M2 = morse_complex(K2).complex
        union = morse_complex(disjoint_union(K1, K2)).complex
        aut_first = calculator.calculate_automorphism_group(K1).order
        aut_second = calculator.calculate_automorphism_group(K2).order
        order_union = calculator.calculate_automorphism_group(union).order
        exception = _find_exception(M1, M2, bound)
        if M1.n_vertices > bound or M2.n_vertices > bound:
            logger.warning(f"Exception search limited to subcomplexes with at most {bound} vertices")
        order_product = aut_first * aut_second
        predicted_equal = exception is None
        observed_equal = order_union == order_product
        return ProductReport(
            order_union=order_union,
            order_product=order_product,
            aut_first=aut_first,
            aut_second=aut_second,
            exception=exception is not None,
            exception_subcomplexes=list(exception) if exception is not None else None,
            search_bound=bound,
            predicted_equal=predicted_equal,
            observed_equal=observed_equal,
            passes=predicted_equal == observed_equal,
        )
    except Exception as e:
        logger.error(f"Error checking automorphism orders: {str(e)}")
        raise
