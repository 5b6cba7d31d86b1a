"""Exact-arithmetic braid group representations and their friendship graphs."""

from .field import QQ, QT, T, RatFunc, FieldError, parse_scalar, format_scalar, evaluate
from .linalg import Matrix, Subspace, rank, rref, image, kernel, intersect, algebra_closure_dim
from .rep import (
    BraidRepresentation,
    RepresentationError,
    verify_relations,
    corank,
    build_burau,
    build_tym_standard,
    build_chi,
    tensor,
    direct_sum,
    conjugate,
    common_eigenlines,
    orbit_independence,
    absolute_irreducibility,
)
from .friendship import build_graph, check_lemma, check_all, CATALOG
from .reduction import reduce, best_reduction, candidate_scalars
from .certify import coprime_witness, chain_profile, nonexistence_certificate, corank3_gate

__all__ = [
    "QQ",
    "QT",
    "T",
    "RatFunc",
    "FieldError",
    "parse_scalar",
    "format_scalar",
    "evaluate",
    "Matrix",
    "Subspace",
    "rank",
    "rref",
    "image",
    "kernel",
    "intersect",
    "algebra_closure_dim",
    "BraidRepresentation",
    "RepresentationError",
    "verify_relations",
    "corank",
    "build_burau",
    "build_tym_standard",
    "build_chi",
    "tensor",
    "direct_sum",
    "conjugate",
    "common_eigenlines",
    "orbit_independence",
    "absolute_irreducibility",
    "build_graph",
    "check_lemma",
    "check_all",
    "CATALOG",
    "reduce",
    "best_reduction",
    "candidate_scalars",
    "coprime_witness",
    "chain_profile",
    "nonexistence_certificate",
    "corank3_gate",
]

__version__ = "0.1.0"
