"""Exact separability decisions in skew polynomial quotients.

Finite base rings are presented by structure constants over Z/c; the
polynomial layer carries a twisting automorphism and derivation; the
decision layer extracts re-checkable witnesses for separability and
for the stronger direct-summand property, cross-checked against the
definitional tensor-square criteria where those apply.
"""

from .errors import (
    AssumptionError,
    CapExceededError,
    ContextMismatchError,
    NotInvariantError,
    PresentationError,
    WitnessDomainError,
)
from .linalg import (
    DEFAULT_ENUM_CAP,
    Submodule,
    binom_mod,
    howell,
    kernel,
    reduce_against,
    solve,
)
from .rings import (
    AdditiveMap,
    FiniteRing,
    RingElement,
    ValidationIssue,
    ValidationReport,
    center_of,
    direct_product,
    first_irreducible,
    fixed_submodule,
    formal_derivative_map,
    frobenius_map,
    galois_field,
    inner_derivation,
    kernel_submodule,
    map_from_config,
    maps_commute,
    matrix_ring,
    ring_from_config,
    ring_to_config,
    truncated_poly_ring,
    validate_automorphism,
    validate_derivation,
    validate_ring,
    zmod_ring,
)
from .skewpoly import (
    DEGREE_CAP_ARITH,
    DEGREE_CAP_INVARIANCE,
    SkewPolynomial,
    SkewPolyRing,
    check_coefficient_centrality,
    coefficients_fixed_by_rho,
    from_left_coefficients,
    is_invariant,
    is_invariant_by_coefficients,
    left_coefficients,
    left_coefficients_of_monomial,
    scalar_times_x_power,
    x_power_times_scalar,
)
from .quotient import QuotientElement, QuotientRing
from .tensor import TensorElement, TensorSquare
from .separability import (
    AssumptionFlags,
    DecisionReport,
    decide,
    find_hirata_element_system,
    find_hirata_witness,
    find_separability_element,
    find_separability_witness,
    hirata_pair_image,
    in_base_centralizer,
    in_twisted_centralizer,
    separability_sum,
    verify_hirata_element_system,
    verify_hirata_witness,
    verify_separability_element,
    verify_separability_witness,
    yx_conversion_check,
)
from .catalog import build_monic, monic_coefficient_vectors, run_catalog, summarize
from .report import (
    canonical_json,
    catalog_document,
    context_digest,
    decision_document,
    document_entries,
    element_from_json,
    element_to_json,
    entries_to_csv,
    pairs_from_json,
    pairs_to_json,
    parse_document,
    poly_to_json,
    report_to_json,
)
from .version import __version__
