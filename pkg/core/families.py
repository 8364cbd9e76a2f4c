"""
Constructors for the standard graph and complex families.
"""

import logging
from itertools import combinations
from typing import Optional

from .complex import SimplicialComplex, attach_leaf, from_facets, leaf_label
from .errors import BadParameter

logger = logging.getLogger(__name__)

FAMILIES = ("path", "cycle", "boundary_simplex", "full_simplex", "star", "centipede", "leafify")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadParameter(message)


def path(t: int) -> SimplicialComplex:
    """Path P_t with t+1 vertices v0..vt and t edges."""
    _require(t >= 1, f"path needs t >= 1, got {t}")
    return from_facets([[f"v{i}", f"v{i + 1}"] for i in range(t)])


def cycle(n: int) -> SimplicialComplex:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return from_facets([[f"v{i}", f"v{(i + 1) % n}"] for i in range(n)])


def boundary_simplex(n: int) -> SimplicialComplex:
    """All proper faces of the simplex on v0..vn."""
    _require(n >= 1, f"boundary_simplex needs n >= 1, got {n}")
    labels = [f"v{i}" for i in range(n + 1)]
    return from_facets([list(face) for face in combinations(labels, n)])


def full_simplex(n: int) -> SimplicialComplex:
    _require(n >= 0, f"full_simplex needs n >= 0, got {n}")
    return from_facets([[f"v{i}" for i in range(n + 1)]])


def star(k: int) -> SimplicialComplex:
    """Center c with leaves l1..lk."""
    _require(k >= 1, f"star needs k >= 1, got {k}")
    return from_facets([["c", f"l{i}"] for i in range(1, k + 1)])


def leafify(G: SimplicialComplex) -> SimplicialComplex:
    """One new leaf per original vertex, attached in id order."""
    result = G
    for v in range(G.n_vertices):
        result = attach_leaf(result, v, label=leaf_label(result, v))
    return result


def centipede(v: int) -> SimplicialComplex:
    """Path on v vertices with a leaf at each vertex."""
    _require(v >= 1, f"centipede needs v >= 1, got {v}")
    if v == 1:
        return from_facets([["v0", "v0'"]])
    return leafify(path(v - 1))


def generate(family: str, param: Optional[int] = None, base: Optional[SimplicialComplex] = None) -> SimplicialComplex:
    """Dispatch on a family name; leafify takes a base complex instead of an integer."""
    builders = {
        "path": path,
        "cycle": cycle,
        "boundary_simplex": boundary_simplex,
        "full_simplex": full_simplex,
        "star": star,
        "centipede": centipede,
    }
    if family == "leafify":
        _require(base is not None, "leafify needs a base complex")
        return leafify(base)
    if family not in builders:
        raise BadParameter(f"Unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    _require(param is not None, f"{family} needs an integer parameter")
    complex_ = builders[family](param)
    logger.debug(f"Generated {family}({param}) with {complex_.n_vertices} vertices")
    return complex_
