"""Polyhedral joins, dual complexes and the homology of polyhedral products.

Faces are integer bitmasks over an ordered ground set; see :mod:`polyjoin.complex`.
"""
from ._backend import BACKEND
from .chains import (BasedChainComplex, GradedRanks, homology, pp_triangulated, simplicial_homology,
                     staircase_product)
from .complex import (GroundSet, IndexPair, SimplicialComplex, SimplicialPair, boundary, build, compose,
                      dual, join, link, polyhedral_join, restrict, simplex)
from .duality import (DecompositionRanks, SpherePairSpec, decomposition_55, duality_check_56,
                      oracle_compare_55, sphere_pair_betti)
from .errors import (InvalidInputError, PolyjoinError, PreconditionError, ResourceLimitError,
                     UnsupportedRingError)
from .hochster import CharacterRanks, SigmaOmegaTable, alexander_dual_check, character_ranks, sigma_omega_table, split_status
from .inclusion import BasedInclusion, InclusionFamily, build_inclusion_complex, compare, predicted_homology
from .linalg import F2, F3, Q, Z, RingSpec
from .random_gen import gen_random
from .setmodel import FiniteSetPair, normalize, pp_points, verify_complement, verify_substitution
from .verdict import Verdict

__all__ = [
    "BACKEND", "BasedChainComplex", "BasedInclusion", "CharacterRanks", "DecompositionRanks", "F2", "F3",
    "FiniteSetPair", "GradedRanks", "GroundSet", "InclusionFamily", "IndexPair", "InvalidInputError",
    "PolyjoinError", "PreconditionError", "Q", "ResourceLimitError", "RingSpec", "SigmaOmegaTable",
    "SimplicialComplex", "SimplicialPair", "SpherePairSpec", "UnsupportedRingError", "Verdict", "Z",
    "alexander_dual_check", "boundary", "build", "build_inclusion_complex", "character_ranks", "compare",
    "compose", "decomposition_55", "dual", "duality_check_56", "gen_random", "homology", "join", "link",
    "normalize", "oracle_compare_55", "polyhedral_join", "pp_points", "pp_triangulated", "predicted_homology",
    "restrict", "sigma_omega_table", "simplex", "simplicial_homology", "sphere_pair_betti", "split_status",
    "staircase_product", "verify_complement", "verify_substitution",
]
