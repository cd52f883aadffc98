"""Exact certification of flat affine and flat projective structures on Lie algebras.

Algebras are given by rational structure constants; witnesses are lists of
matrices; every check is exact and reports the first failing basis tuple.
"""

from __future__ import annotations

from .algebra import (
    GradedDecomposition,
    GradingError,
    JacobiError,
    LieAlgebra,
    Subspace,
    center,
    check_jacobi,
    derived_series,
    derived_subalgebra,
    direct_sum,
    is_nilpotent,
    is_perfect,
    is_solvable,
    lower_central_series,
    semidirect_sum,
    validate_grading,
)
from .flat import (
    EndoValuedMap,
    GradedHom,
    WitnessCertificate,
    check_endo_hom,
    check_n_hom,
    check_p_hom,
    check_star,
    connection_from,
    curvature,
    extended_hom_from_n,
    is_reducible,
    normalize_to_n,
    p_hom_from_extended,
    p_hom_from_ifas,
    projectively_equivalent,
    shift_by_covector,
    torsion,
    verify_ifas,
)
from .linalg import Matrix, parse_rational
from .constructors import (
    Factor,
    auto_ifas,
    direct_sum_ifas,
    direct_sum_plus_line_ifps,
    graded_ifas,
    ifps_to_ifas_extension,
    o3_n_hom,
    reducible_sum_ifas,
    semidirect_ifas,
    sl2_n_hom,
    sln_affine_n_hom,
    upper_triangular_ifas,
)
from .catalog import certify_all, decomposition_for, lookup

__version__ = "0.1.0"

__all__ = [
    "EndoValuedMap", "Factor", "GradedDecomposition", "GradedHom", "GradingError", "JacobiError",
    "LieAlgebra", "Matrix", "Subspace", "WitnessCertificate", "auto_ifas", "center", "certify_all",
    "check_endo_hom", "check_jacobi", "check_n_hom", "check_p_hom", "check_star", "connection_from",
    "curvature", "decomposition_for", "derived_series", "derived_subalgebra", "direct_sum",
    "direct_sum_ifas", "direct_sum_plus_line_ifps", "extended_hom_from_n", "graded_ifas",
    "ifps_to_ifas_extension", "is_nilpotent", "is_perfect", "is_reducible", "is_solvable", "lookup",
    "lower_central_series", "normalize_to_n", "o3_n_hom", "p_hom_from_extended", "p_hom_from_ifas",
    "parse_rational", "projectively_equivalent", "reducible_sum_ifas", "semidirect_ifas",
    "semidirect_sum", "shift_by_covector", "sl2_n_hom", "sln_affine_n_hom", "torsion",
    "upper_triangular_ifas", "validate_grading", "verify_ifas",
]
