"""Exact computations with the type B zigzag algebra, its bimodules and the braid group action.

Diagrammatic Soergel calculus lives in :mod:`bzigzag.soergel`.
"""
from .bimod import GradedBimodule, find_isomorphism, hom_space, named_map
from .braid import decat_matrix, parse_word, tl_check, verify_braid_relations, word_to_complex
from .komplex import BoundedComplex, complex_tensor, homotopy_equivalent, minimize, rouquier_complex
from .zigzag import build_algebra, projective

__version__ = "0.1.0"

__all__ = [
    "BoundedComplex", "GradedBimodule", "build_algebra", "complex_tensor", "decat_matrix",
    "find_isomorphism", "hom_space", "homotopy_equivalent", "minimize", "named_map", "parse_word",
    "projective", "rouquier_complex", "tl_check", "verify_braid_relations", "word_to_complex",
]
