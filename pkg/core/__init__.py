"""
Core package: simplicial complexes, ranked posets, isomorphism search and the
file formats and payloads shared by the CLI.
"""

from .complex import (
    SimplicialComplex,
    all_simplices,
    are_isomorphic,
    attach_leaf,
    delete_face,
    dimension,
    disjoint_union,
    euler_characteristic,
    f_vector,
    facets_containing,
    from_facets,
    induced_subcomplex,
    is_connected,
    join,
    labeled_equal,
    relabel,
    suspension,
)
from .families import generate
from .poset import (
    Poset,
    diagrams_isomorphic,
    dual,
    hasse_diagram,
    height,
    height2_subposets,
    induced_subposet,
    poset_disjoint_union,
    reflection,
    remove_element,
)

__all__ = [
    'SimplicialComplex', 'all_simplices', 'are_isomorphic', 'attach_leaf', 'delete_face',
    'dimension', 'disjoint_union', 'euler_characteristic', 'f_vector', 'facets_containing',
    'from_facets', 'induced_subcomplex', 'is_connected', 'join', 'labeled_equal', 'relabel',
    'suspension', 'generate', 'Poset', 'diagrams_isomorphic', 'dual', 'hasse_diagram', 'height',
    'height2_subposets', 'induced_subposet', 'poset_disjoint_union', 'reflection', 'remove_element',
]
