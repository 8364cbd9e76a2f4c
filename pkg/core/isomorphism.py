"""
Backtracking isomorphism search for set systems given as bitmask facets.

The same search serves simplicial complexes (facets), Hasse diagrams (cover
edges plus isolated elements, colored by rank) and automorphism generation
(a fixed prefix of the mapping).
"""

import logging
from collections import Counter, defaultdict
from typing import Collection, Dict, List, Mapping, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


def _bits(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class _Side:
    """Per-vertex incidence data of one set system."""

    def __init__(self, n: int, facets: Collection[int], colors: Optional[Sequence[int]]):
        self.n = n
        self.facets = frozenset(facets)
        self.colors = list(colors) if colors is not None else [0] * n
        self.incident: List[List[int]] = [[] for _ in range(n)]
        for f in self.facets:
            for v in _bits(f):
                self.incident[v].append(f)
        self.signature = [
            (self.colors[v], len(self.incident[v]), tuple(sorted(_popcount(f) for f in self.incident[v])))
            for v in range(n)
        ]


class IsomorphismSearch:
    """
    Depth-first search over vertex bijections a -> b.

    Vertices of a are assigned in a fixed order (prefix first, then by id) and
    candidates are tried in ascending id order, so the first complete mapping
    found is the lexicographically least one with the given prefix.
    """

    def __init__(self, a: _Side, b: _Side):
        self.a = a
        self.b = b
        self.by_signature: Dict[tuple, List[int]] = defaultdict(list)
        for w in range(b.n):
            self.by_signature[b.signature[w]].append(w)

    def _consistent(self, v: int, w: int, forward: Dict[int, int], domain: int, image: int) -> bool:
        """Facets through v, restricted to mapped vertices, must match those through w."""
        left = Counter()
        for f in self.a.incident[v]:
            restricted = 0
            for u in _bits(f & domain):
                restricted |= 1 << forward[u]
            left[(restricted, _popcount(f))] += 1
        right = Counter((g & image, _popcount(g)) for g in self.b.incident[w])
        return left == right

    def _maps_facets(self, forward: Dict[int, int]) -> bool:
        for f in self.a.facets:
            g = 0
            for u in _bits(f):
                g |= 1 << forward[u]
            if g not in self.b.facets:
                return False
        return True

    def search(self, fixed: Optional[Mapping[int, int]] = None) -> Optional[Dict[int, int]]:
        fixed = dict(fixed or {})
        # Fixed prefix, then id order with ascending candidates: the first hit is the least mapping.
        order = list(fixed) + [v for v in range(self.a.n) if v not in fixed]
        forward: Dict[int, int] = {}
        used = set()

        def extend(depth: int, domain: int, image: int) -> bool:
            if depth == len(order):
                return self._maps_facets(forward)
            v = order[depth]
            if v in fixed:
                candidates = [fixed[v]] if self.b.signature[fixed[v]] == self.a.signature[v] else []
            else:
                candidates = self.by_signature.get(self.a.signature[v], [])
            for w in candidates:
                if w in used:
                    continue
                forward[v] = w
                used.add(w)
                new_domain, new_image = domain | (1 << v), image | (1 << w)
                if self._consistent(v, w, forward, new_domain, new_image) and extend(depth + 1, new_domain, new_image):
                    return True
                del forward[v]
                used.discard(w)
            return False

        if extend(0, 0, 0):
            return dict(sorted(forward.items()))
        return None


def find_isomorphism(
    n_a: int,
    facets_a: Collection[int],
    n_b: int,
    facets_b: Collection[int],
    colors_a: Optional[Sequence[int]] = None,
    colors_b: Optional[Sequence[int]] = None,
    fixed: Optional[Mapping[int, int]] = None,
) -> Optional[Dict[int, int]]:
    """Color-preserving bijection of vertices carrying facets_a onto facets_b, or None."""
    if n_a != n_b or len(facets_a) != len(facets_b):
        return None
    a = _Side(n_a, facets_a, colors_a)
    b = _Side(n_b, facets_b, colors_b)
    if sorted(a.signature) != sorted(b.signature):
        return None
    return IsomorphismSearch(a, b).search(fixed)


def automorphism_search(
    n: int, facets: Collection[int], colors: Optional[Sequence[int]] = None
) -> Tuple[_Side, IsomorphismSearch]:
    """Reusable search object for repeated automorphism queries on one system."""
    side = _Side(n, facets, colors)
    return side, IsomorphismSearch(side, side)
