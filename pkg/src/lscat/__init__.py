"""Cohomological lower bounds for Lusternik-Schnirelmann category.

Computes cup-length over GF(2) (closed formula and definitional ideal
search), Morse/Betti lower bounds, interval ledgers chaining
cl <= e* <= cat <= dim and cat <= ballcat <= crit - 1, and mechanical
checks of the criteria under which a degree +-1 map f: M -> N certifies
cat M >= cat N.
"""

from .bounds import (
    BoundLedger,
    Interval,
    LedgerError,
    MorseData,
    betti_sum,
    cat_bounds,
    cup_length,
    cup_length_formula,
    cup_length_search,
    morse_lower_bound,
    so_n_presentation,
)
from .catalogue import SpaceRecord, UnknownSpaceError, get, names, surface_table
from .gf2 import BitMatrix, BitVec, in_span, is_injective, rank
from .homs import (
    CriterionVerdict,
    DimensionMismatch,
    HomValidationError,
    Report,
    RingHomSpec,
    ValidatedHom,
    check_cl_monotone,
    check_injectivity,
    check_top_class,
    compose,
    cor_cat_transfer,
    full_report,
    low_dim_check,
    morse_transfer_check,
    thm_main_check,
    thm_torus_check,
    torus_stabilization_k,
    validate_hom,
)
from .rings import (
    Element,
    GeneratorSpec,
    MultiplicationTable,
    TruncatedPresentation,
    basis_in_degree,
    check_poincare_duality,
    expand_to_table,
    multiply,
    poincare_polynomial,
    tensor_product,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BitVec",
    "BoundLedger",
    "CriterionVerdict",
    "DimensionMismatch",
    "Element",
    "GeneratorSpec",
    "HomValidationError",
    "Interval",
    "LedgerError",
    "MorseData",
    "MultiplicationTable",
    "Report",
    "RingHomSpec",
    "SpaceRecord",
    "TruncatedPresentation",
    "UnknownSpaceError",
    "ValidatedHom",
    "basis_in_degree",
    "betti_sum",
    "cat_bounds",
    "check_cl_monotone",
    "check_injectivity",
    "check_poincare_duality",
    "check_top_class",
    "compose",
    "cor_cat_transfer",
    "cup_length",
    "cup_length_formula",
    "cup_length_search",
    "expand_to_table",
    "full_report",
    "get",
    "in_span",
    "is_injective",
    "low_dim_check",
    "morse_lower_bound",
    "morse_transfer_check",
    "multiply",
    "names",
    "poincare_polynomial",
    "rank",
    "so_n_presentation",
    "surface_table",
    "tensor_product",
    "thm_main_check",
    "thm_torus_check",
    "torus_stabilization_k",
    "validate_hom",
]
