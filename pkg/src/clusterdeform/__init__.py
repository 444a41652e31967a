"""Exact-arithmetic cluster algebra toolkit.

Mutation and enumeration of finite-type seed patterns, cluster complexes
and their Stanley-Reisner ideals, universal coefficients, graded
deformation-degree bookkeeping, decision procedures for the lattice and
derivation conditions, the weight cone of the squarefree degeneration, and
order-by-order lifting to a flat family over the coefficient parameters.
"""

from .seeds import (ExtendedExchangeMatrix, Seed, mutate, classify_finite_type,
                    load_seed, seed_from_dict, seed_to_dict)
from .atlas import enumerate_atlas, separation_check, tropical_g_vector
from .simplicial import (SimplicialComplex, MonomialIdeal, cluster_complex,
                         sr_ideal, minimal_nonfaces, link, join, sphere_check)
from .gradings import (m_grading, rank_flags, find_positive_grading,
                       find_strictly_positive, add_frozen_for_positivity,
                       t_degrees)
from .universal import build_universal, fiber_at_zero
from .cotangent import (t1_degree_families, t1_invariant, t1_witnesses,
                        characteristic_image, obstruction_class)
from .properties import (check_t0, check_t0_star, check_t1, repair_t1,
                         semigroup_data)
from .groebner import groebner_cone, interior_weight, cone_certificates
from .deform import first_order, lift, verify_family

__version__ = "0.1.0"

__all__ = [
    "ExtendedExchangeMatrix", "Seed", "mutate", "classify_finite_type",
    "load_seed", "seed_from_dict", "seed_to_dict",
    "enumerate_atlas", "separation_check", "tropical_g_vector",
    "SimplicialComplex", "MonomialIdeal", "cluster_complex", "sr_ideal",
    "minimal_nonfaces", "link", "join", "sphere_check",
    "m_grading", "rank_flags", "find_positive_grading",
    "find_strictly_positive", "add_frozen_for_positivity", "t_degrees",
    "build_universal", "fiber_at_zero",
    "t1_degree_families", "t1_invariant", "t1_witnesses",
    "characteristic_image", "obstruction_class",
    "check_t0", "check_t0_star", "check_t1", "repair_t1", "semigroup_data",
    "groebner_cone", "interior_weight", "cone_certificates",
    "first_order", "lift", "verify_family",
]
