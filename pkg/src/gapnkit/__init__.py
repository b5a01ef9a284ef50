"""Tools for GAPN monomial functions over finite fields of odd characteristic.

The package decides whether x -> x**d is generalized almost perfect
nonlinear on F_(p^n), by brute-force differential spectra and by the
digit-polynomial criterion for exponents of p-weight p, and it searches
exponent space one cyclotomic coset at a time.
"""

__version__ = "0.1.0"

from .errors import (
    BothZero,
    BudgetExceeded,
    CacheCorrupt,
    DeciderDisagreement,
    DivisionByZero,
    EvenCharacteristic,
    FactorizationTooLarge,
    GapnkitError,
    NotIrreducible,
    NotNormalized,
    NotPrime,
    OrderTooLarge,
    RootIsZero,
    WrongWeight,
    ZeroDirection,
)
from .fields import FieldCtx, find_irreducible, make_field
from .polyfp import Factorization, PolyFp, factorize, poly_gcd, root_order
from .gapn import (
    FnTable,
    GapnReport,
    differential_spectrum,
    gen_derivative,
    linearized_kernel_dim,
    monomial_gapn_fast,
    monomial_table,
)
from .monomial import (
    CriterionReport,
    ExceptionalProfile,
    circulant_rank,
    coset_members,
    coset_rep,
    criterion_gapn,
    describe_exponent,
    digit_polynomial,
    digits_of,
    exceptional_profile,
    extension_prime,
    identify_family,
    max_degree_family,
    normalize_weight_p,
    p_weight,
    welch_exponent,
)
from .search import (
    SOFT_ORDER_BUDGET,
    FamilyEntry,
    FamilyReport,
    SearchFilters,
    SearchJob,
    SearchResult,
    analyze_exponent,
    cache_lookup,
    cache_store,
    exact_verdict,
    fast_path_validated,
    run_search,
    verify_families,
)

__all__ = [
    "__version__",
    "BothZero",
    "BudgetExceeded",
    "CacheCorrupt",
    "CriterionReport",
    "DeciderDisagreement",
    "DivisionByZero",
    "EvenCharacteristic",
    "ExceptionalProfile",
    "Factorization",
    "FactorizationTooLarge",
    "FamilyEntry",
    "FamilyReport",
    "FieldCtx",
    "FnTable",
    "GapnReport",
    "GapnkitError",
    "NotIrreducible",
    "NotNormalized",
    "NotPrime",
    "OrderTooLarge",
    "PolyFp",
    "RootIsZero",
    "SOFT_ORDER_BUDGET",
    "SearchFilters",
    "SearchJob",
    "SearchResult",
    "WrongWeight",
    "ZeroDirection",
    "analyze_exponent",
    "cache_lookup",
    "cache_store",
    "circulant_rank",
    "coset_members",
    "coset_rep",
    "criterion_gapn",
    "describe_exponent",
    "differential_spectrum",
    "digit_polynomial",
    "digits_of",
    "exact_verdict",
    "exceptional_profile",
    "extension_prime",
    "factorize",
    "fast_path_validated",
    "find_irreducible",
    "gen_derivative",
    "identify_family",
    "linearized_kernel_dim",
    "make_field",
    "max_degree_family",
    "monomial_gapn_fast",
    "monomial_table",
    "normalize_weight_p",
    "p_weight",
    "poly_gcd",
    "root_order",
    "run_search",
    "verify_families",
    "welch_exponent",
]
