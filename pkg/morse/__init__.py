"""
Morse package: the Morse complex functor, strong collapses, the pattern
catalog, homology and automorphism groups.
"""

from .builder import (
    GradientVectorField,
    MorseComplex,
    MorseComplexBuilder,
    PrimitivePair,
    compatible,
    f,
    is_acyclic,
    maximal_gvfs,
    morse_complex,
    morse_join,
    primitive_pairs,
    pure_morse_complex,
)
from .catalog import PatternCatalog, algorithm1, algorithm1_report, builtin_catalog, load_catalog
from .homology import matches_sphere, reduced_betti
from .strong_homotopy import (
    CollapseTrace,
    core,
    dominating_vertex,
    is_minimal,
    is_strongly_collapsible,
    strong_collapse_step,
    verify_leaf_collapse,
)
from .symmetry import PermutationGroup, automorphism_group, is_fully_connected, product_order_check

__all__ = [
    'GradientVectorField', 'MorseComplex', 'MorseComplexBuilder', 'PrimitivePair', 'compatible', 'f',
    'is_acyclic', 'maximal_gvfs', 'morse_complex', 'morse_join', 'primitive_pairs', 'pure_morse_complex',
    'PatternCatalog', 'algorithm1', 'algorithm1_report', 'builtin_catalog', 'load_catalog',
    'matches_sphere', 'reduced_betti', 'CollapseTrace', 'core', 'dominating_vertex', 'is_minimal',
    'is_strongly_collapsible', 'strong_collapse_step', 'verify_leaf_collapse', 'PermutationGroup',
    'automorphism_group', 'is_fully_connected', 'product_order_check',
]
