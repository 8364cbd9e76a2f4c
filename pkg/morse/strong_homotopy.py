"""
Dominated vertices, elementary strong collapses and cores.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from core.complex import (
    SimplicialComplex,
    attach_leaf,
    bits,
    build_complex,
    dimension,
    facets_containing,
    from_facets,
    graph_degrees,
    is_connected,
    labeled_equal,
    leaf_label,
    mask_of,
    popcount,
)
from core.errors import ConsistencyError, HypothesisViolation, NotDominated
from core.poset import hasse_diagram, poset_disjoint_union, remove_element
from core.schemas import CollapseStep, CorePayload
from core.io import complex_to_payload
from .builder import MorseComplex, f, morse_complex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CollapseTrace:
    steps: Tuple[Tuple[str, str], ...]
    final: SimplicialComplex

    def to_payload(self) -> CorePayload:
        base = complex_to_payload(self.final)
        return CorePayload(
            vertices=base.vertices,
            facets=base.facets,
            steps=[CollapseStep(removed=r, witness=w) for r, w in self.steps],
        )


def _common_mask(K: SimplicialComplex, u: int) -> int:
    """Vertices other than u lying in every facet through u."""
    common = -1
    for facet in facets_containing(K, u):
        common &= facet
    return common & ~(1 << u)


def dominates(K: SimplicialComplex, v, u) -> bool:
    """Whether v lies in every facet containing u (v != u)."""
    vid, uid = K.vertex_id(v), K.vertex_id(u)
    return vid != uid and bool(_common_mask(K, uid) >> vid & 1)


def dominating_vertex(K: SimplicialComplex, u) -> Optional[int]:
    """Least vertex id dominating u, or None."""
    common = _common_mask(K, K.vertex_id(u))
    if not common:
        return None
    return (common & -common).bit_length() - 1


def dominated_vertices(K: SimplicialComplex) -> List[Tuple[int, int]]:
    """(dominated vertex, least witness) for every dominated vertex, by id."""
    out = []
    for u in range(K.n_vertices):
        w = dominating_vertex(K, u)
        if w is not None:
            out.append((u, w))
    return out


def delete_vertex(K: SimplicialComplex, u: int) -> SimplicialComplex:
    bit = 1 << u
    return build_complex(K.labels, (facet & ~bit for facet in K.facets))


def strong_collapse_step(K: SimplicialComplex, u) -> SimplicialComplex:
    uid = K.vertex_id(u)
    if dominating_vertex(K, uid) is None:
        raise NotDominated(f"Vertex {K.labels[uid]!r} is not dominated")
    return delete_vertex(K, uid)


def core(K: SimplicialComplex, rng: Optional[random.Random] = None) -> Tuple[SimplicialComplex, CollapseTrace]:
    """
    Strong-collapse K until no vertex is dominated. Without rng the least
    dominated vertex goes first; with rng a uniformly random one does.
    """
    current = K
    steps: List[Tuple[str, str]] = []
    while True:
        candidates = dominated_vertices(current)
        if not candidates:
            break
        u, w = rng.choice(candidates) if rng is not None else candidates[0]
        steps.append((current.labels[u], current.labels[w]))
        current = delete_vertex(current, u)
    logger.debug(f"Core reached after {len(steps)} collapses: {current.n_vertices} vertices left")
    return current, CollapseTrace(tuple(steps), current)


def replay_trace(K: SimplicialComplex, trace: CollapseTrace) -> SimplicialComplex:
    """Re-run a trace, checking each witness at the time of removal."""
    current = K
    for removed, witness in trace.steps:
        if not dominates(current, witness, removed):
            raise NotDominated(f"{witness!r} does not dominate {removed!r} at this step")
        current = delete_vertex(current, current.vertex_id(removed))
    if not labeled_equal(current, trace.final):
        raise ConsistencyError("Replaying the trace does not reproduce its final complex")
    return current


def is_strongly_collapsible(K: SimplicialComplex) -> bool:
    reduced, _ = core(K)
    return reduced.n_vertices == 1


def is_minimal(K: SimplicialComplex) -> bool:
    return not any(dominating_vertex(K, u) is not None for u in range(K.n_vertices))


def _pair_vertices(M: MorseComplex) -> Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], int]:
    """Vertex id of each primitive pair, keyed by the faces of its two elements."""
    faces = M.source.faces
    return {(faces[p.lower], faces[p.upper]): i for i, p in enumerate(M.pairs)}


def _face_facets(M: MorseComplex, K: SimplicialComplex) -> Set[FrozenSet[Tuple[Tuple[str, ...], Tuple[str, ...]]]]:
    """Facets of K, a subcomplex of M's complex, with vertices read as face pairs."""
    keys = {M.complex.labels[i]: key for key, i in _pair_vertices(M).items()}
    return {frozenset(keys[label] for label in K.simplex_labels(facet)) for facet in K.facets}


def leaf_dominations(K: SimplicialComplex) -> List[Tuple[str, str, bool]]:
    """
    For every leaf edge ab (a of degree one) and every other edge bc at b,
    the couple ((a,ab), (b,bc)) and whether the first dominates the second
    in the Morse complex of K.
    """
    if dimension(K) != 1:
        raise HypothesisViolation("leaf_dominations expects a graph")
    M = morse_complex(K)
    vertex_of = _pair_vertices(M)
    degrees = graph_degrees(K)
    edges = [bits(e) for e in K.facets if popcount(e) == 2]
    out = []
    for a in range(K.n_vertices):
        if degrees[a] != 1:
            continue
        (ab,) = [e for e in edges if a in e]
        b = ab[0] if ab[1] == a else ab[1]
        for bc in edges:
            if b not in bc or bc == ab:
                continue
            witness = vertex_of[(K.simplex_labels(1 << a), K.simplex_labels(mask_of(ab)))]
            dominated = vertex_of[(K.simplex_labels(1 << b), K.simplex_labels(mask_of(bc)))]
            out.append((
                M.complex.labels[witness],
                M.complex.labels[dominated],
                dominates(M.complex, witness, dominated),
            ))
    return out


def index_one_violations(M: MorseComplex) -> List[Tuple[str, str]]:
    """
    (witness, dominated) couples where the witness pair's lower element is
    not a vertex. In the Morse complex of a simplicial complex every vertex
    that dominates another has index one, so this list should be empty.
    """
    K = M.complex
    out = []
    for u in range(K.n_vertices):
        common = _common_mask(K, u)
        for w in bits(common):
            if M.source.ranks[M.pairs[w].lower] != 0:
                out.append((K.labels[w], K.labels[u]))
    return out


def verify_leaf_collapse(K: SimplicialComplex, v) -> bool:
    """
    Attach a leaf w at v, then strong-collapse every pair (v, e) with e an
    edge of K at v using (w, vw) as witness. True when what remains is
    f((H(K) - v) + H(vw)), with vertices compared as pairs of faces.
    """
    vid = K.vertex_id(v)
    if dimension(K) < 1 or not is_connected(K):
        raise HypothesisViolation("verify_leaf_collapse needs a connected complex with at least one edge")
    try:
        w_label = leaf_label(K, vid)
        v_label = K.labels[vid]
        extended = attach_leaf(K, vid, label=w_label)
        M = morse_complex(extended)
        vertex_of = _pair_vertices(M)
        leaf_edge = M.complex.labels[vertex_of[((w_label,), (v_label, w_label))]]

        targets = [
            M.complex.labels[i] for i, p in enumerate(M.pairs)
            if M.source.faces[p.lower] == (v_label,) and w_label not in M.source.faces[p.upper]
        ]
        current = M.complex
        for target in targets:
            if not dominates(current, leaf_edge, target):
                logger.warning(f"{leaf_edge} does not dominate {target}; leaf collapse fails")
                return False
            current = delete_vertex(current, current.vertex_id(target))

        expected = f(poset_disjoint_union(
            remove_element(hasse_diagram(K), vid),
            hasse_diagram(from_facets([[v_label, w_label]])),
        ))
        matches = _face_facets(M, current) == _face_facets(expected, expected.complex)
        logger.info(f"Leaf collapse at {v_label}: removed {len(targets)} pairs, target match {matches}")
        return matches
    except Exception as e:
        logger.error(f"Error verifying leaf collapse at {K.labels[vid]}: {str(e)}")
        raise
