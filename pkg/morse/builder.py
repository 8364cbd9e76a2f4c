"""
Primitive pairs, gradient vector fields and the Morse complex functor f.

f(P) has one vertex per cover of P; a set of covers is a simplex when the
covers are pairwise element-disjoint and orienting them upward (all other
covers downward) leaves no directed cycle. Facets are found by a canonical
depth-first enumeration of acyclic matchings.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from config import morse_config
from core.complex import (
    COLLISION_SUFFIX,
    SimplicialComplex,
    bits,
    disjoint_union,
    mask_of,
    popcount,
    prune_to_facets,
)
from core.errors import MixedSources, NoCovers, NotACover, NotAMatching, SizeLimit
from core.poset import Poset, face_index, hasse_diagram, poset_disjoint_union, simplex_name
from core.schemas import MorseComplexPayload

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class PrimitivePair:
    lower: int
    upper: int
    source: Poset = field(compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"({self.source.labels[self.lower]},{self.source.labels[self.upper]})"

    @property
    def elements(self) -> Tuple[str, str]:
        return self.source.labels[self.lower], self.source.labels[self.upper]


def pair_notation(pair: PrimitivePair) -> str:
    """'(sigma)x' for the pair (sigma, sigma + x); plain label when faces are unknown."""
    faces = pair.source.faces
    if faces is None:
        return pair.label
    sigma, tau = faces[pair.lower], faces[pair.upper]
    extra = [v for v in tau if v not in sigma]
    return f"({simplex_name(sigma)}){extra[0]}"


def primitive_pairs(P: Poset) -> List[PrimitivePair]:
    return [PrimitivePair(lower, upper, P) for lower, upper in P.sorted_covers]


def pair_labels(pairs: Iterable[PrimitivePair]) -> List[str]:
    """Vertex labels of f(P): '(lower,upper)', suffixed when two pairs would read the same."""
    taken = set()
    out = []
    for pair in pairs:
        label = pair.label
        while label in taken:
            label += COLLISION_SUFFIX
        taken.add(label)
        out.append(label)
    return out


def compatible(a: PrimitivePair, b: PrimitivePair) -> bool:
    """Element-disjointness only; joint acyclicity is checked by is_acyclic."""
    if a.source is not b.source and a.source != b.source:
        raise MixedSources("Pairs come from different posets")
    return not ({a.lower, a.upper} & {b.lower, b.upper})


def _check_matching(P: Poset, pairs: Iterable[PrimitivePair]) -> List[PrimitivePair]:
    pairs = list(pairs)
    used: Dict[int, PrimitivePair] = {}
    for pair in pairs:
        if pair.source is not P and pair.source != P:
            raise MixedSources("Pair does not belong to the given poset")
        if (pair.lower, pair.upper) not in P.covers:
            raise NotACover(P.labels[pair.lower], P.labels[pair.upper])
        for x in (pair.lower, pair.upper):
            if x in used and used[x] != pair:
                raise NotAMatching(P.labels[x])
            used[x] = pair
    return pairs


def is_acyclic(P: Poset, m: Iterable[PrimitivePair]) -> bool:
    """Matched covers point up, the rest point down; acyclic means no directed cycle."""
    matched = {(p.lower, p.upper) for p in _check_matching(P, m)}
    graph = nx.DiGraph()
    graph.add_nodes_from(range(P.n_elements))
    for lower, upper in P.covers:
        if (lower, upper) in matched:
            graph.add_edge(lower, upper)
        else:
            graph.add_edge(upper, lower)
    return nx.is_directed_acyclic_graph(graph)


@dataclass(frozen=True)
class GradientVectorField:
    pairs: FrozenSet[PrimitivePair]
    source: Poset = field(compare=False, repr=False)

    def sorted_pairs(self) -> List[PrimitivePair]:
        return sorted(self.pairs)

    def is_acyclic(self) -> bool:
        return is_acyclic(self.source, self.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(p.label for p in self.sorted_pairs()) + "}"


@dataclass(frozen=True)
class MorseComplex:
    complex: SimplicialComplex
    pairs: Tuple[PrimitivePair, ...]
    source: Poset = field(compare=False, repr=False)

    @property
    def vertex_pairs(self) -> List[Tuple[str, str]]:
        return [p.elements for p in self.pairs]

    def to_payload(self) -> MorseComplexPayload:
        return MorseComplexPayload(
            vertices=list(self.complex.labels),
            facets=sorted(bits(f) for f in self.complex.facets),
            vertex_pairs=[list(p) for p in self.vertex_pairs],
            notation=[pair_notation(p) for p in self.pairs],
        )


class MorseComplexBuilder:
    """Canonical-order enumeration of the acyclic matchings of one poset."""

    def __init__(self, budget: Optional[int] = None):
        self.budget = budget if budget is not None else morse_config.SIMPLEX_BUDGET

    def _setup(self, P: Poset):
        self.poset = P
        self.pairs = primitive_pairs(P)
        self.match_up: Dict[int, int] = {}
        self.match_down: Dict[int, int] = {}
        self.visited = 0
        self.facets: List[int] = []

    def _creates_cycle(self, lower: int, upper: int) -> bool:
        """
        Whether matching (lower, upper) closes a V-path. Such a cycle would
        run from upper back to lower inside their rank band: down along an
        unmatched cover, then up along a matched one.
        """
        down = self.poset.down
        stack, seen = [upper], {upper}
        while stack:
            top = stack.pop()
            for x in down[top]:
                if top == upper and x == lower:
                    continue
                if x == self.match_down.get(top):
                    continue
                if x == lower:
                    return True
                nxt = self.match_up.get(x)
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    def _can_add(self, index: int) -> bool:
        pair = self.pairs[index]
        if pair.lower in self.match_up or pair.lower in self.match_down:
            return False
        if pair.upper in self.match_up or pair.upper in self.match_down:
            return False
        return not self._creates_cycle(pair.lower, pair.upper)

    def _push(self, index: int) -> None:
        pair = self.pairs[index]
        self.match_up[pair.lower] = pair.upper
        self.match_down[pair.upper] = pair.lower

    def _pop(self, index: int) -> None:
        pair = self.pairs[index]
        del self.match_up[pair.lower]
        del self.match_down[pair.upper]

    def _extend(self, start: int, chosen: int) -> None:
        extended = False
        for j in range(start, len(self.pairs)):
            if not self._can_add(j):
                continue
            extended = True
            self.visited += 1
            if self.visited > self.budget:
                raise SizeLimit(
                    f"More than {self.budget} simplices while enumerating f(P); "
                    f"raise MORSEFORGE_SIMPLEX_BUDGET to continue"
                )
            self._push(j)
            self._extend(j + 1, chosen | (1 << j))
            self._pop(j)
        if extended:
            return
        # Nothing later fits; the set is a facet unless an earlier pair still does.
        if any(not chosen >> i & 1 and self._can_add(i) for i in range(start)):
            return
        self.facets.append(chosen)

    def build(self, P: Poset) -> MorseComplex:
        try:
            if not P.covers:
                raise NoCovers("Poset has no covers, so f(P) has no vertices")
            self._setup(P)
            self._extend(0, 0)
            labels = tuple(pair_labels(self.pairs))
            complex_ = SimplicialComplex(labels, frozenset(self.facets))
            logger.info(
                f"Built f(P): {len(self.pairs)} vertices, {len(self.facets)} facets, "
                f"{self.visited} simplices visited"
            )
            return MorseComplex(complex=complex_, pairs=tuple(self.pairs), source=P)
        except Exception as e:
            logger.error(f"Error building Morse complex: {str(e)}")
            raise


def f(P: Poset, budget: Optional[int] = None) -> MorseComplex:
    return MorseComplexBuilder(budget).build(P)


def morse_complex(K: SimplicialComplex, budget: Optional[int] = None) -> MorseComplex:
    return f(hasse_diagram(K), budget)


def complex_of_source(P: Poset) -> Optional[SimplicialComplex]:
    """The complex whose Hasse diagram is P, read off the recorded faces, or None."""
    if P.faces is None or not P.n_elements:
        return None
    vertices = [face[0] for face in P.faces if len(face) == 1]
    index = {label: i for i, label in enumerate(vertices)}
    if len(index) != len(vertices) or any(v not in index for face in P.faces for v in face):
        return None
    K = SimplicialComplex(
        tuple(vertices), prune_to_facets(mask_of(index[v] for v in face) for face in P.faces)
    )
    return K if hasse_diagram(K) == P else None


def morse_join(M: MorseComplex, N: MorseComplex) -> MorseComplex:
    """
    Join of two Morse complexes, named as the Morse complex of the disjoint
    union of their sources: morse_join(M(K), M(L)) equals M(K + L) as
    labeled complexes. When either source is not a Hasse diagram of a
    complex the sources are joined as posets.
    """
    K, L = complex_of_source(M.source), complex_of_source(N.source)
    if K is not None and L is not None:
        U = disjoint_union(K, L)
        union = hasse_diagram(U)
        renamed = dict(zip(L.labels, U.labels[K.n_vertices:]))
        where = face_index(union)
        lift_m = [where[face] for face in M.source.faces]
        lift_n = [where[tuple(renamed[v] for v in face)] for face in N.source.faces]
    else:
        union = poset_disjoint_union(M.source, N.source)
        lift_m = list(range(M.source.n_elements))
        lift_n = [x + M.source.n_elements for x in range(N.source.n_elements)]

    # Vertex names come from the union, so they match f(union) exactly.
    all_pairs = primitive_pairs(union)
    names = {(p.lower, p.upper): label for p, label in zip(all_pairs, pair_labels(all_pairs))}
    pairs = tuple(
        PrimitivePair(lift[p.lower], lift[p.upper], union)
        for lift, side in ((lift_m, M), (lift_n, N))
        for p in side.pairs
    )
    shift = M.complex.n_vertices
    complex_ = SimplicialComplex(
        tuple(names[(p.lower, p.upper)] for p in pairs),
        frozenset(s | (t << shift) for s in M.complex.facets for t in N.complex.facets),
    )
    logger.debug(f"Joined Morse complexes: {complex_.n_vertices} vertices, {len(complex_.facets)} facets")
    return MorseComplex(complex=complex_, pairs=pairs, source=union)


def maximal_gvfs(P: Poset, budget: Optional[int] = None) -> List[GradientVectorField]:
    """Inclusion-maximal acyclic matchings in canonical order."""
    M = f(P, budget)
    facets = sorted(M.complex.facets, key=lambda m: (popcount(m), bits(m)))
    return [GradientVectorField(frozenset(M.pairs[i] for i in bits(m)), P) for m in facets]


def pure_morse_complex(K: SimplicialComplex, budget: Optional[int] = None) -> MorseComplex:
    """Subcomplex generated by the facets of maximum cardinality."""
    M = morse_complex(K, budget)
    top = max(popcount(m) for m in M.complex.facets)
    kept = [m for m in M.complex.facets if popcount(m) == top]
    used = bits(mask_of(i for m in kept for i in bits(m)))
    remap = {old: new for new, old in enumerate(used)}
    facets = frozenset(mask_of(remap[i] for i in bits(m)) for m in kept)
    complex_ = SimplicialComplex(tuple(M.complex.labels[i] for i in used), facets)
    return MorseComplex(complex=complex_, pairs=tuple(M.pairs[i] for i in used), source=M.source)


def realizability_obstruction(K: SimplicialComplex) -> Optional[str]:
    """
    Reason why K cannot be the Morse complex of any complex, from vertex
    parity, or None when the parity argument says nothing. A Morse complex
    has one vertex per cover of a Hasse diagram: even for graphs, and at
    least 9 once a 2-simplex is present.
    """
    n = K.n_vertices
    if n % 2 == 1 and n < 9:
        return f"{n} vertices is odd and below 9, so no complex has this many primitive pairs"
    return None


def canonical_facets(M: MorseComplex) -> List[List[str]]:
    """Facets as sorted label lists, for golden comparisons."""
    return sorted(sorted(M.complex.simplex_labels(m)) for m in M.complex.facets)
