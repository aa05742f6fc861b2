"""Exact cyclotomic arithmetic and balanced pairwise-product decompositions."""

from .cyclotomic import (
    CycElem,
    IntPoly,
    canonical_reduce,
    cyclotomic_polynomial,
    euler_phi,
    field_norm,
    galois_apply,
    numeric_embed,
    subfield_embed,
    subfield_project,
)
from .periods import (
    PeriodSystem,
    ResolventReport,
    decomposition_tuple,
    gauss_sum,
    gaussian_periods,
    jacobi_sum,
    period_polynomial,
    period_system,
    polynomial_discriminant,
    polynomial_resultant,
    primitive_root,
    resolvent_power,
    zeta_basis_tuple,
)
from .search import (
    DecompInstance,
    NodeBudgetExceeded,
    SearchConfig,
    apply_filters,
    classify_structure,
    distance_class_check,
    enumerate_balanced_partitions,
    make_instance,
    pairwise_products,
    search,
)
from .squares import (
    TwoSquares,
    brahmagupta_compose,
    factorize,
    is_prime,
    next_prime,
    perfect_cube_test,
    prime_two_square_decomposition,
    two_squares_representable,
)

__version__ = "0.1.0"

__all__ = [
    "CycElem",
    "IntPoly",
    "DecompInstance",
    "NodeBudgetExceeded",
    "PeriodSystem",
    "ResolventReport",
    "SearchConfig",
    "TwoSquares",
    "apply_filters",
    "brahmagupta_compose",
    "canonical_reduce",
    "classify_structure",
    "cyclotomic_polynomial",
    "decomposition_tuple",
    "distance_class_check",
    "enumerate_balanced_partitions",
    "euler_phi",
    "factorize",
    "field_norm",
    "galois_apply",
    "gauss_sum",
    "gaussian_periods",
    "is_prime",
    "jacobi_sum",
    "make_instance",
    "next_prime",
    "numeric_embed",
    "pairwise_products",
    "perfect_cube_test",
    "period_polynomial",
    "period_system",
    "polynomial_discriminant",
    "polynomial_resultant",
    "prime_two_square_decomposition",
    "primitive_root",
    "resolvent_power",
    "search",
    "subfield_embed",
    "subfield_project",
    "two_squares_representable",
    "zeta_basis_tuple",
]
