"""
Finite abstract simplicial complexes stored by their facets.

A simplex is a Python int used as a bitset over vertex ids, so subset tests
are single AND operations regardless of the vertex count. Faces are never
stored; all_simplices() produces the downward closure on demand.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

import networkx as nx

from .errors import BadParameter, DuplicateLabel, DuplicateVertexInFacet, EmptyInput, UnknownVertex
from .isomorphism import find_isomorphism

logger = logging.getLogger(__name__)

VertexRef = Union[int, str]

# Suffix appended to a label of the right-hand operand when join or
# disjoint_union would otherwise produce a duplicate label.
COLLISION_SUFFIX = "#L"


def popcount(mask: int) -> int:
    """Number of vertices in a simplex."""
    return bin(mask).count("1")


def bits(mask: int) -> List[int]:
    """Vertex ids of a simplex, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(ids: Iterable[int]) -> int:
    """Simplex with the given vertex ids."""
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def simplex_key(mask: int) -> Tuple[int, List[int]]:
    """Canonical simplex order: by dimension, then by sorted vertex ids."""
    return popcount(mask), bits(mask)


def submasks(mask: int) -> Iterator[int]:
    """Every nonempty subset of a simplex."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def prune_to_facets(masks: Iterable[int]) -> FrozenSet[int]:
    """Drop every mask contained in another one."""
    kept: List[int] = []
    for m in sorted(set(masks), key=popcount, reverse=True):
        if not any(m & k == m for k in kept):
            kept.append(m)
    return frozenset(kept)


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertex labels by id and the facets as bitmasks; faces are implied."""

    labels: Tuple[str, ...]
    facets: FrozenSet[int]

    def __post_init__(self):
        if not self.facets:
            raise EmptyInput("Simplicial complex has no facets; empty complexes are not supported")
        if len(set(self.labels)) != len(self.labels):
            dup = next(l for l, n in Counter(self.labels).items() if n > 1)
            raise DuplicateLabel(f"Vertex label {dup!r} appears twice")
        covered = 0
        for f in self.facets:
            if f <= 0:
                raise EmptyInput("Empty simplex in facet list")
            covered |= f
        if covered != (1 << len(self.labels)) - 1:
            raise BadParameter("Every vertex must belong to at least one facet")

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @cached_property
    def label_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def sorted_facets(self) -> List[int]:
        return sorted(self.facets, key=simplex_key)

    def vertex_id(self, v: VertexRef) -> int:
        """Resolve a vertex given by id or by label."""
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < self.n_vertices:
                return v
            raise UnknownVertex(f"Vertex id {v} out of range 0..{self.n_vertices - 1}")
        if v in self.label_index:
            return self.label_index[v]
        raise UnknownVertex(f"Unknown vertex {v!r}")

    def mask_of_labels(self, labels: Iterable[VertexRef]) -> int:
        return mask_of(self.vertex_id(l) for l in labels)

    def simplex_labels(self, mask: int) -> Tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def facet_label_sets(self) -> Set[FrozenSet[str]]:
        return {frozenset(self.simplex_labels(f)) for f in self.facets}

    def __str__(self) -> str:
        shown = ", ".join("{" + ",".join(self.simplex_labels(f)) + "}" for f in self.sorted_facets)
        return f"SimplicialComplex({self.n_vertices} vertices: {shown})"


def build_complex(labels: Sequence[str], masks: Iterable[int]) -> SimplicialComplex:
    """Prune to facets and drop vertices that no longer occur, keeping id order."""
    facets = prune_to_facets(m for m in masks if m)
    if not facets:
        raise EmptyInput("Operation produced an empty complex")
    used = bits(_union(facets))
    if len(used) == len(labels):
        return SimplicialComplex(tuple(labels), facets)
    remap = {old: new for new, old in enumerate(used)}
    new_facets = frozenset(mask_of(remap[i] for i in bits(f)) for f in facets)
    return SimplicialComplex(tuple(labels[i] for i in used), new_facets)


def _union(masks: Iterable[int]) -> int:
    """Bitwise OR of all masks."""
    out = 0
    for m in masks:
        out |= m
    return out


def from_facets(facet_lists: Sequence[Sequence[str]]) -> SimplicialComplex:
    """Build a complex from label lists; ids follow first appearance."""
    if not facet_lists:
        raise EmptyInput("No facets given")
    labels: List[str] = []
    index: Dict[str, int] = {}
    masks = []
    for facet in facet_lists:
        if not facet:
            raise EmptyInput("Empty facet in input")
        mask = 0
        for raw in facet:
            label = str(raw)
            if label not in index:
                index[label] = len(labels)
                labels.append(label)
            bit = 1 << index[label]
            if mask & bit:
                raise DuplicateVertexInFacet(f"Label {label!r} repeated in facet {list(facet)}")
            mask |= bit
        masks.append(mask)
    return SimplicialComplex(tuple(labels), prune_to_facets(masks))


def all_simplices(K: SimplicialComplex) -> Set[int]:
    """Every nonempty face of every facet."""
    out: Set[int] = set()
    for f in K.facets:
        out.update(submasks(f))
    return out


def simplices_by_dimension(K: SimplicialComplex) -> List[List[int]]:
    """Canonically ordered simplices, grouped by dimension 0..dim K."""
    grouped: List[List[int]] = [[] for _ in range(dimension(K) + 1)]
    for s in sorted(all_simplices(K), key=simplex_key):
        grouped[popcount(s) - 1].append(s)
    return grouped


def facets_containing(K: SimplicialComplex, v: VertexRef) -> Set[int]:
    """Facets through vertex v."""
    bit = 1 << K.vertex_id(v)
    return {f for f in K.facets if f & bit}


def dimension(K: SimplicialComplex) -> int:
    return max(popcount(f) for f in K.facets) - 1


def f_vector(K: SimplicialComplex) -> List[int]:
    """Number of simplices in each dimension 0..dim K."""
    counts = [0] * (dimension(K) + 1)
    for s in all_simplices(K):
        counts[popcount(s) - 1] += 1
    return counts


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** p * n for p, n in enumerate(f_vector(K)))


def _fresh_labels(existing: Iterable[str], incoming: Sequence[str]) -> List[str]:
    """Incoming labels, each suffixed with COLLISION_SUFFIX until unused."""
    taken = set(existing)
    out = []
    for label in incoming:
        while label in taken:
            label = label + COLLISION_SUFFIX
        taken.add(label)
        out.append(label)
    return out


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """
    K * L: every facet of K united with every facet of L. The vertices of L
    follow those of K and are renamed only where a label clashes.
    """
    labels = list(K.labels) + _fresh_labels(K.labels, L.labels)
    # L ids move past the K ids
    shift = K.n_vertices
    facets = frozenset(s | (t << shift) for s in K.facets for t in L.facets)
    return SimplicialComplex(tuple(labels), facets)


def disjoint_union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """K + L side by side; labels of L are renamed where they clash with K."""
    labels = list(K.labels) + _fresh_labels(K.labels, L.labels)
    shift = K.n_vertices
    facets = frozenset(K.facets) | frozenset(t << shift for t in L.facets)
    return SimplicialComplex(tuple(labels), facets)


def leaf_label(K: SimplicialComplex, v: VertexRef) -> str:
    """Label of v primed until unused, e.g. v0 gives v0'."""
    label = K.labels[K.vertex_id(v)] + "'"
    while label in K.label_index:
        label += "'"
    return label


def attach_leaf(K: SimplicialComplex, v: VertexRef, label: Optional[str] = None) -> SimplicialComplex:
    """K with a fresh vertex joined to v by one edge; the new vertex gets the last id."""
    vid = K.vertex_id(v)
    new_label = label if label is not None else leaf_label(K, vid)
    if new_label in K.label_index:
        raise DuplicateLabel(f"Leaf label {new_label!r} already used")
    leaf = K.n_vertices
    return SimplicialComplex(K.labels + (new_label,), K.facets | {(1 << vid) | (1 << leaf)})


def relabel(K: SimplicialComplex, mapping: Union[Mapping[str, str], None] = None, prefix: str = "") -> SimplicialComplex:
    """Rename vertices, keeping ids. Labels absent from mapping are only prefixed."""
    mapping = mapping or {}
    labels = tuple(prefix + mapping.get(l, l) for l in K.labels)
    return SimplicialComplex(labels, K.facets)


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    """Join with the two points N and S."""
    poles = SimplicialComplex(("N", "S"), frozenset({1, 2}))
    return join(K, poles)


def induced_subcomplex(K: SimplicialComplex, vertices: Iterable[VertexRef]) -> SimplicialComplex:
    """All simplices of K whose vertices lie in the given subset."""
    keep = mask_of(K.vertex_id(v) for v in vertices)
    if not keep:
        raise EmptyInput("Induced subcomplex on an empty vertex set")
    return build_complex(K.labels, (f & keep for f in K.facets))


def delete_face(K: SimplicialComplex, face: Iterable[VertexRef]) -> SimplicialComplex:
    """K minus every simplex containing the given face."""
    sigma = K.mask_of_labels(face)
    if not sigma:
        raise EmptyInput("Cannot delete the empty face")
    if not any(f & sigma == sigma for f in K.facets):
        raise BadParameter(f"{K.simplex_labels(sigma)} is not a simplex of the complex")
    masks = []
    for f in K.facets:
        if f & sigma != sigma:
            masks.append(f)
            continue
        # Keep the faces of f missing one vertex of sigma
        for i in bits(sigma):
            masks.append(f & ~(1 << i))
    return build_complex(K.labels, masks)


def one_skeleton(K: SimplicialComplex) -> nx.Graph:
    """Vertices and edges of K as a networkx graph on vertex ids."""
    graph = nx.Graph()
    graph.add_nodes_from(range(K.n_vertices))
    for f in K.facets:
        ids = bits(f)
        graph.add_edges_from((a, b) for i, a in enumerate(ids) for b in ids[i + 1:])
    return graph


def is_connected(K: SimplicialComplex) -> bool:
    """Connectivity of the 1-skeleton."""
    return nx.is_connected(one_skeleton(K))


def graph_degrees(K: SimplicialComplex) -> List[int]:
    """Degree of each vertex in the 1-skeleton, by id."""
    graph = one_skeleton(K)
    return [graph.degree(i) for i in range(K.n_vertices)]


def labeled_equal(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    """Same facets when simplices are read as sets of labels."""
    return set(K.labels) == set(L.labels) and K.facet_label_sets() == L.facet_label_sets()


def are_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> Optional[Dict[int, int]]:
    """Lexicographically least vertex bijection carrying facets onto facets, or None."""
    return find_isomorphism(K.n_vertices, K.facets, L.n_vertices, L.facets)
