"""Exact tests for persistent homogeneous polynomials.

A homogeneous polynomial is persistent when it is concise and its generic
directional derivatives are again persistent, down to full-rank quadrics.
This package decides persistence exactly through a Hessian criterion on a
partial polarization, and ships the supporting algebra: sparse rational
polynomials, determinants, gcds, perfect-power extraction, polarization and a
gallery of named families.
"""

from persist.polycore import (
    BlockedPolynomial,
    PolyMatrix,
    Polynomial,
    SquarefreeFactorization,
    determinant,
    divide_exact,
    kth_root,
    multivariate_gcd,
    squarefree_factorization,
    substitute_linear,
)
from persist.expr import HomogeneityError, ParseError, parse
from persist.polarize import full_polarization, partial_polarization, restitution
from persist.hessian import hessian, hessian_matrix, polar_map_eval, weight_profile
from persist.persistence import (
    PersistenceReport,
    ProbeOutcome,
    condition_a,
    condition_d,
    criterion_c,
    is_concise,
    persistence_report,
    probe_definition,
)

__version__ = "0.1.0"

__all__ = [
    "BlockedPolynomial", "PolyMatrix", "Polynomial", "SquarefreeFactorization",
    "determinant", "divide_exact", "kth_root", "multivariate_gcd",
    "squarefree_factorization", "substitute_linear",
    "HomogeneityError", "ParseError", "parse",
    "full_polarization", "partial_polarization", "restitution",
    "hessian", "hessian_matrix", "polar_map_eval", "weight_profile",
    "PersistenceReport", "ProbeOutcome", "condition_a", "condition_d", "criterion_c",
    "is_concise", "persistence_report", "probe_definition",
    "__version__",
]
