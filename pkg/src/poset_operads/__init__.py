"""Operads As(Q) built from finite posets Q.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .construction import (
    dimension,
    hilbert_coeffs,
    is_basic,
    normal_forms,
    orientation,
    relations_star,
)
from .koszul import (
    dual_relations_annihilator,
    dual_relations_explicit,
    hilbert_inversion_check,
    verify_duality_iso,
)
from .oracle import member_of_ideal, quotient_dim
from .poset import Poset, parse_poset, standard_labeling, thin_dual
from .rewriting import critical_pairs, is_confluent, normalize
from .schroder import compose, enumerate_alternating, free_algebra_star
from .trees import LEAF, Generator, Node, TreePoly, format_tree, parse_tree

__version__ = "0.1.0"

__all__ = [
    "LEAF",
    "Generator",
    "Node",
    "Poset",
    "TreePoly",
    "compose",
    "critical_pairs",
    "dimension",
    "dual_relations_annihilator",
    "dual_relations_explicit",
    "enumerate_alternating",
    "format_tree",
    "free_algebra_star",
    "hilbert_coeffs",
    "hilbert_inversion_check",
    "is_basic",
    "is_confluent",
    "member_of_ideal",
    "normal_forms",
    "normalize",
    "orientation",
    "parse_poset",
    "parse_tree",
    "quotient_dim",
    "relations_star",
    "standard_labeling",
    "thin_dual",
    "verify_duality_iso",
]
