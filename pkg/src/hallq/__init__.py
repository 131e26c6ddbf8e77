"""Ringel-Hall algebras of representation-directed bound quivers over prime
fields, and their presentations by twisted multicommutator relations."""

from .gallery import example_quiver, golden_relations, match_golden
from .hall import HallAlgebra, hall_number, hall_number_via_ext, rho_verify
from .presentation import Presentation, generate_relations, graded_dimension, quotient
from .quiver import BoundQuiver, chain, load, parse_text, validate
from .repmod import enumerate_indecomposables, euler_check, gldim, make_rep
from .unitform import positive_roots, unit_form_of

__version__ = "0.1.0"

__all__ = [
    "BoundQuiver",
    "HallAlgebra",
    "Presentation",
    "chain",
    "enumerate_indecomposables",
    "euler_check",
    "example_quiver",
    "generate_relations",
    "gldim",
    "golden_relations",
    "graded_dimension",
    "hall_number",
    "hall_number_via_ext",
    "load",
    "make_rep",
    "match_golden",
    "parse_text",
    "positive_roots",
    "quotient",
    "rho_verify",
    "unit_form_of",
    "validate",
]
