"""
Ranked finite posets presented by their cover relations (Hasse diagrams).

Posets built from a complex remember, for each element, the vertex labels of
the simplex it stands for. Posets obtained by removing elements or read from
files may be degenerate: no complex realizes them.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from config import morse_config
from .complex import COLLISION_SUFFIX, SimplicialComplex, all_simplices, bits, popcount, simplex_key
from .errors import BadParameter, DuplicateLabel, UnknownElement
from .families import boundary_simplex
from .isomorphism import find_isomorphism

logger = logging.getLogger(__name__)

ElementRef = Union[int, str]


@dataclass(frozen=True)
class Poset:
    labels: Tuple[str, ...]
    ranks: Tuple[int, ...]
    covers: FrozenSet[Tuple[int, int]]
    faces: Optional[Tuple[Tuple[str, ...], ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.ranks):
            raise BadParameter("labels and ranks differ in length")
        if len(set(self.labels)) != len(self.labels):
            dup = next(l for l, n in Counter(self.labels).items() if n > 1)
            raise DuplicateLabel(f"Element label {dup!r} appears twice")
        if any(r < 0 for r in self.ranks):
            raise BadParameter("Ranks must be nonnegative")
        n = len(self.labels)
        for lower, upper in self.covers:
            if not (0 <= lower < n and 0 <= upper < n):
                raise UnknownElement(f"Cover ({lower}, {upper}) refers to a missing element")
            if self.ranks[upper] != self.ranks[lower] + 1:
                raise BadParameter(
                    f"Cover {self.labels[lower]} < {self.labels[upper]} does not raise rank by one"
                )

    @property
    def n_elements(self) -> int:
        return len(self.labels)

    @cached_property
    def label_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def sorted_covers(self) -> List[Tuple[int, int]]:
        return sorted(self.covers)

    @cached_property
    def up(self) -> Tuple[Tuple[int, ...], ...]:
        adjacency: List[List[int]] = [[] for _ in self.labels]
        for lower, upper in self.sorted_covers:
            adjacency[lower].append(upper)
        return tuple(tuple(a) for a in adjacency)

    @cached_property
    def down(self) -> Tuple[Tuple[int, ...], ...]:
        adjacency: List[List[int]] = [[] for _ in self.labels]
        for lower, upper in self.sorted_covers:
            adjacency[upper].append(lower)
        return tuple(tuple(sorted(a)) for a in adjacency)

    def element_id(self, x: ElementRef) -> int:
        if isinstance(x, int) and not isinstance(x, bool):
            if 0 <= x < self.n_elements:
                return x
            raise UnknownElement(f"Element id {x} out of range")
        if x in self.label_index:
            return self.label_index[x]
        raise UnknownElement(f"Unknown element {x!r}")

    def cover_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n_elements))
        graph.add_edges_from(self.covers)
        return graph

    def __str__(self) -> str:
        shown = ", ".join(f"{self.labels[a]}<{self.labels[b]}" for a, b in self.sorted_covers)
        return f"Poset({self.n_elements} elements: {shown})"


def poset_from_covers(elements: Sequence[Tuple[str, int]], covers: Iterable[Tuple[str, str]]) -> Poset:
    """Build a poset from (label, rank) pairs and covers given by labels."""
    labels = tuple(label for label, _ in elements)
    ranks = tuple(rank for _, rank in elements)
    index = {label: i for i, label in enumerate(labels)}
    edges = set()
    for lower, upper in covers:
        if lower not in index or upper not in index:
            missing = lower if lower not in index else upper
            raise UnknownElement(f"Cover mentions undeclared element {missing!r}")
        edges.add((index[lower], index[upper]))
    return Poset(labels, ranks, frozenset(edges))


def simplex_name(vertex_labels: Sequence[str]) -> str:
    """Short element label of a simplex: 'uv' for one-character vertex names, 'v0.v1' otherwise."""
    if all(len(l) == 1 for l in vertex_labels):
        return "".join(vertex_labels)
    return ".".join(vertex_labels)


def element_names(faces: Sequence[Tuple[str, ...]]) -> List[str]:
    """
    Distinct element labels for simplices given as vertex-label tuples.

    A vertex is named by its own label. A larger simplex takes its short
    name when that is still free, else the braced form '{a,b}', with
    COLLISION_SUFFIX appended until the name is unused.
    """
    taken = {face[0] for face in faces if len(face) == 1}
    names = []
    for face in faces:
        if len(face) == 1:
            names.append(face[0])
            continue
        name = simplex_name(face)
        if name in taken:
            name = "{" + ",".join(face) + "}"
        while name in taken:
            name += COLLISION_SUFFIX
        taken.add(name)
        names.append(name)
    return names


def hasse_diagram(K: SimplicialComplex) -> Poset:
    simplices = sorted(all_simplices(K), key=simplex_key)
    index = {s: i for i, s in enumerate(simplices)}
    faces = tuple(K.simplex_labels(s) for s in simplices)
    covers = set()
    for tau in simplices:
        if popcount(tau) < 2:
            continue
        for v in bits(tau):
            covers.add((index[tau & ~(1 << v)], index[tau]))
    return Poset(
        labels=tuple(element_names(faces)),
        ranks=tuple(popcount(s) - 1 for s in simplices),
        covers=frozenset(covers),
        faces=faces,
    )


def face_index(P: Poset) -> Dict[Tuple[str, ...], int]:
    """Element id of each face, for posets that carry faces."""
    if P.faces is None:
        raise BadParameter("Poset does not record the faces of its elements")
    return {face: i for i, face in enumerate(P.faces)}


def induced_subposet(P: Poset, elements: Iterable[ElementRef]) -> Poset:
    keep = sorted({P.element_id(x) for x in elements})
    remap = {old: new for new, old in enumerate(keep)}
    covers = frozenset((remap[a], remap[b]) for a, b in P.covers if a in remap and b in remap)
    faces = tuple(P.faces[i] for i in keep) if P.faces is not None else None
    return Poset(
        labels=tuple(P.labels[i] for i in keep),
        ranks=tuple(P.ranks[i] for i in keep),
        covers=covers,
        faces=faces,
    )


def remove_element(P: Poset, x: ElementRef) -> Poset:
    target = P.element_id(x)
    return induced_subposet(P, (i for i in range(P.n_elements) if i != target))


def poset_disjoint_union(P: Poset, Q: Poset) -> Poset:
    taken = set(P.labels)
    q_labels = []
    for label in Q.labels:
        while label in taken:
            label = label + COLLISION_SUFFIX
        taken.add(label)
        q_labels.append(label)
    shift = P.n_elements
    faces = P.faces + Q.faces if P.faces is not None and Q.faces is not None else None
    return Poset(
        labels=P.labels + tuple(q_labels),
        ranks=P.ranks + Q.ranks,
        covers=P.covers | frozenset((a + shift, b + shift) for a, b in Q.covers),
        faces=faces,
    )


def empty_poset() -> Poset:
    return Poset((), (), frozenset())


def dual(P: Poset) -> Poset:
    """Rank-reversed poset: every cover is flipped."""
    if P.n_elements == 0:
        return P
    top = max(P.ranks)
    return Poset(
        labels=P.labels,
        ranks=tuple(top - r for r in P.ranks),
        covers=frozenset((b, a) for a, b in P.covers),
        faces=P.faces,
    )


def height(P: Poset) -> int:
    """Number of elements in a longest chain."""
    if P.n_elements == 0:
        return 0
    longest = [1] * P.n_elements
    for x in sorted(range(P.n_elements), key=lambda i: P.ranks[i]):
        for y in P.down[x]:
            longest[x] = max(longest[x], longest[y] + 1)
    return max(longest)


def reflection(n: int) -> Dict[int, int]:
    """
    Element bijection sigma -> delta - sigma on the Hasse diagram of the
    boundary of the n-simplex. Reverses covers, so it is not a poset map.
    """
    if n < 2:
        raise BadParameter(f"reflection needs n >= 2, got {n}")
    K = boundary_simplex(n)
    H = hasse_diagram(K)
    delta = (1 << K.n_vertices) - 1
    by_mask = {K.mask_of_labels(face): i for i, face in enumerate(H.faces)}
    return {i: by_mask[delta & ~mask] for mask, i in by_mask.items()}


def _diagram_system(P: Poset) -> Tuple[int, List[int]]:
    """Cover edges as 2-element sets, isolated elements as singletons."""
    touched = set()
    sets = []
    for a, b in P.covers:
        sets.append((1 << a) | (1 << b))
        touched.update((a, b))
    sets.extend(1 << i for i in range(P.n_elements) if i not in touched)
    return P.n_elements, sets


def diagram_isomorphism(P: Poset, Q: Poset, allow_reversal: bool = False) -> Optional[Dict[int, int]]:
    """
    Bijection of elements carrying covers onto covers with ranks matched
    after shifting both minima to zero. With allow_reversal the ranks of Q
    may also be read upside down.
    """
    if P.n_elements != Q.n_elements or len(P.covers) != len(Q.covers):
        return None
    if P.n_elements == 0:
        return {}
    n, sets_p = _diagram_system(P)
    _, sets_q = _diagram_system(Q)
    low_p, low_q, high_q = min(P.ranks), min(Q.ranks), max(Q.ranks)
    colors_p = [r - low_p for r in P.ranks]
    mapping = find_isomorphism(n, sets_p, n, sets_q, colors_p, [r - low_q for r in Q.ranks])
    if mapping is None and allow_reversal:
        mapping = find_isomorphism(n, sets_p, n, sets_q, colors_p, [high_q - r for r in Q.ranks])
    return mapping


def diagrams_isomorphic(P: Poset, Q: Poset, allow_reversal: bool = False) -> bool:
    return diagram_isomorphism(P, Q, allow_reversal) is not None


def _shape_key(P: Poset) -> tuple:
    """Cheap invariant that is equal on diagrams related by isomorphism or reversal."""
    degrees = sorted(len(P.up[i]) + len(P.down[i]) for i in range(P.n_elements))
    return P.n_elements, len(P.covers), tuple(degrees)


def _pendants(P: Poset, component: Sequence[int]) -> List[int]:
    inside = set(component)
    return [
        x for x in component
        if sum(1 for y in P.up[x] + P.down[x] if y in inside) == 1
    ]


def height2_subposets(P: Poset, element_cap: Optional[int] = None) -> Iterator[Poset]:
    """
    Connected induced subposets of height 2, one rank band at a time.

    Each connected component of a band is yielded first, then the component
    with any nonempty set of its pendant elements removed (when what is left
    stays connected with height 2). Candidates come smallest first and are
    deduplicated up to diagram isomorphism or rank reversal. Components above
    element_cap are skipped with a warning.
    """
    cap = element_cap if element_cap is not None else morse_config.SUBPOSET_ELEMENT_CAP
    if P.n_elements == 0:
        return
    components: List[Poset] = []
    trimmed: List[Poset] = []
    for rank in sorted(set(P.ranks)):
        band_covers = [(a, b) for a, b in P.sorted_covers if P.ranks[a] == rank]
        if not band_covers:
            continue
        band = nx.Graph()
        band.add_edges_from(band_covers)
        for nodes in sorted(nx.connected_components(band), key=lambda c: (len(c), min(c))):
            component = sorted(nodes)
            if len(component) > cap:
                logger.warning(
                    f"Skipping rank-{rank} band component with {len(component)} elements (cap {cap})"
                )
                continue
            components.append(induced_subposet(P, component))
            pendants = _pendants(P, component)
            for size in range(1, len(pendants) + 1):
                for removed in combinations(pendants, size):
                    rest = [x for x in component if x not in removed]
                    sub = induced_subposet(P, rest)
                    if sub.covers and nx.is_connected(sub.cover_graph()):
                        trimmed.append(sub)

    seen: Dict[tuple, List[Poset]] = {}
    for group in (components, trimmed):
        for sub in sorted(group, key=lambda s: s.n_elements):
            bucket = seen.setdefault(_shape_key(sub), [])
            if any(diagrams_isomorphic(sub, other, allow_reversal=True) for other in bucket):
                continue
            bucket.append(sub)
            yield sub
