"""Exact co-Folner certificates and search tools for Thompson's group F acting on dyadics."""

from .action import (CoFolnerCertificate, PointSet, act_set, gap_vector, multiset_image,
                     multiset_intersect, scale_to_naturals, sym_diff_ratio, verify_cofolner)
from .cofolner import (CandidateSet, MultiplicativeBox, build_box, build_cofolner, build_W,
                       lift_to_group, restrict_to_F, shift_average)
from .combsearch import (anneal_search, chain, evaluate, exhaustive_search, general,
                         objective_chain, objective_general, objective_pair3,
                         objective_sequence, pair3, sequence)
from .dyadic import Dyadic, dyadic
from .plgroup import (IDENTITY, T, X0, X1, PLMap, ProbMeasure, apply, compose, invert,
                      is_in_F, make_pl, scale_pow2_map, transitivity_witness, translation)
from .walks import (empirical_tv, harmonicity_residual, simulate, transition_probability)

__all__ = [
    "CandidateSet",
    "CoFolnerCertificate",
    "Dyadic",
    "IDENTITY",
    "MultiplicativeBox",
    "PLMap",
    "PointSet",
    "ProbMeasure",
    "T",
    "X0",
    "X1",
    "act_set",
    "anneal_search",
    "apply",
    "build_W",
    "build_box",
    "build_cofolner",
    "chain",
    "compose",
    "dyadic",
    "empirical_tv",
    "evaluate",
    "exhaustive_search",
    "gap_vector",
    "general",
    "harmonicity_residual",
    "invert",
    "is_in_F",
    "lift_to_group",
    "make_pl",
    "multiset_image",
    "multiset_intersect",
    "objective_chain",
    "objective_general",
    "objective_pair3",
    "objective_sequence",
    "pair3",
    "restrict_to_F",
    "scale_pow2_map",
    "scale_to_naturals",
    "sequence",
    "shift_average",
    "simulate",
    "sym_diff_ratio",
    "transition_probability",
    "transitivity_witness",
    "translation",
    "verify_cofolner",
]

__version__ = "0.1.0"
