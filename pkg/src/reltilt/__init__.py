"""Relative two-term tilting workbench over finite-dimensional bound quiver algebras.

The main entry points are re-exported here; see the submodules for details.
"""

from .algebra import AlgebraError, BoundQuiverAlgebra, NonConfluentError, build_algebra, linear_a
from .atlas import IndecomposableAtlas, knit_atlas
from .completion import (
    Workbench,
    bongartz,
    co_bongartz,
    completions,
    exchange_graph,
    is_weak_cluster_tilting,
    mutate,
    r_annihilator,
    verify_mutation_pair,
)
from .field import get_prime, set_prime
from .modules import Representation, RepHom, hom_basis, minimal_projective_presentation
from .torsion import TauPair, enumerate_support_tau_tilting, left_bongartz, support_tau_tilting_test
from .twoterm import TwoTermComplex, cone, cocone, h_functor, hom_k, hom_k_shift1, is_two_term_rigid

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "BoundQuiverAlgebra",
    "IndecomposableAtlas",
    "NonConfluentError",
    "RepHom",
    "Representation",
    "TauPair",
    "TwoTermComplex",
    "Workbench",
    "bongartz",
    "build_algebra",
    "co_bongartz",
    "cocone",
    "completions",
    "cone",
    "enumerate_support_tau_tilting",
    "exchange_graph",
    "get_prime",
    "h_functor",
    "hom_basis",
    "hom_k",
    "hom_k_shift1",
    "is_two_term_rigid",
    "is_weak_cluster_tilting",
    "knit_atlas",
    "left_bongartz",
    "linear_a",
    "minimal_projective_presentation",
    "mutate",
    "r_annihilator",
    "set_prime",
    "support_tau_tilting_test",
    "verify_mutation_pair",
]
