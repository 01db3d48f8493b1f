"""Exact Fox coloring invariants of knot and link diagrams, and the
partition of non-trivial colorings into equivalence classes under affine
color symmetries."""

from .diagram import (MoveError, MoveSite, PdCode, PdError, PlanarDiagram,
                      apply_move, build_diagram, catalog, catalog_names,
                      parse_pd, random_variants)
from .linalg import (IntegerMatrix, ModularKernel, SmithDecomposition,
                     minor_gcd_factors, smith_normal_form, solve_mod)
from .coloring import (Coloring, ColoringMatrix, ColoringProfile,
                       EnumerationBudgetError, brute_force_colorings,
                       brute_force_count, coloring_matrix, count_colorings,
                       enumerate_colorings, extend_coloring, generating_arcs,
                       link_determinant, p_nullity, profile)
from .orbits import (AffineMap, GroupSpec, Orbit, OrbitPartition, VerifyReport,
                     apply_map, apply_permutation_unchecked, build_group,
                     orbit_partition, predicted_class_count, verify_counts)

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "Coloring", "ColoringMatrix", "ColoringProfile",
    "EnumerationBudgetError", "GroupSpec", "IntegerMatrix", "ModularKernel",
    "MoveError", "MoveSite", "Orbit", "OrbitPartition", "PdCode", "PdError",
    "PlanarDiagram", "SmithDecomposition", "VerifyReport", "apply_map",
    "apply_move", "apply_permutation_unchecked", "brute_force_colorings",
    "brute_force_count", "build_diagram", "build_group", "catalog",
    "catalog_names", "coloring_matrix", "count_colorings",
    "enumerate_colorings", "extend_coloring", "generating_arcs",
    "link_determinant", "minor_gcd_factors", "orbit_partition", "parse_pd",
    "p_nullity", "predicted_class_count", "profile", "random_variants",
    "smith_normal_form", "solve_mod", "verify_counts",
]
