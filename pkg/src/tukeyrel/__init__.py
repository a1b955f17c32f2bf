"""Tukey morphisms between finite binary relations.

Relations live on two sides capped at 64 points each and are stored as
bitset matrices.  The package computes exact dominating numbers, skeleton
reductions, morphism existence with witnesses, an exhaustive census of
skeletal relations by order, and the recursive block families realizing
prescribed invariant pairs.
"""

from .census import (CensusCatalog, build_catalog, emit_catalog_csv,
                     emit_hasse_dot, emit_skeleton_files, enumerate_skeletal,
                     probe_self_dual_question)
from .construct import c_n, c_nk, ladder
from .invariants import (INFINITE, DeltaValue, delta_str, dominates,
                         dominating_number, dual_dominating_number, is_ladder,
                         min_dominating_family)
from .morphism import (DecompositionError, MorphismWitness, NodeLimitExceeded,
                       SolverConfig, UnionDecomposition, WitnessError,
                       check_morphism, compose, decompose_against_union,
                       dominating_family_pushforward, exists_morphism,
                       find_morphism, homomorphism_shortcut, parse_witness,
                       render_witness, search_morphism, shortcut_witness,
                       transpose_witness)
from .relation import (CANONICAL_MAX_COLS, MAX_SIDE, CapacityError, ParseError,
                       Relation, canonical_form, canonical_key, disjoint_union,
                       dual, find_isomorphism, induced_subrelation,
                       is_isomorphic, neighborhood, parse_relation,
                       serialize_relation)
from .skeleton import (PointClassification, RandomizedReport, SkeletonTrace,
                       TraceStep, classify_points, is_skeletal, render_trace,
                       replay_trace, skeleton, skeleton_randomized)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
