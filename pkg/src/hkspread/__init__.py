"""Exact characteristic-p commutative algebra: Gröbner bases, lengths,
Hilbert-Kunz multiplicities, and finite-q star-spread estimation."""

__version__ = "0.1.0"

from .errors import (
    AlgebraError,
    ContainmentError,
    FrobeniusPowerError,
    HomogeneityError,
    InfiniteLengthError,
    NotPrimeError,
    PreconditionError,
    ResourceLimitError,
    RingMismatchError,
    ScriptError,
    ZeroDivisorError,
)
from .groebner import (
    GroebnerBasis,
    GuardConfig,
    buchberger,
    is_member,
    krull_dimension,
    normal_form,
    set_default_guard,
    standard_monomials,
    use_guard,
)
from .ideals import (
    Ideal,
    bracket_power,
    ideal_colon,
    ideal_intersection,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    min_gens,
)
from .lengths import (
    INFINITE,
    HKEstimate,
    HKSample,
    LengthValue,
    ehk_estimate,
    hk_function,
    length_quotient,
    length_subquotient,
)
from .orders import DEGLEX, DEGREVLEX, LEX, AuxBlockOrder, MonomialOrder, order_by_name
from .poly import (
    FrobeniusExponent,
    Monomial,
    Polynomial,
    PrimeField,
    RingSpec,
    poly_add,
    poly_mul,
    poly_qth_power,
)
from .runner import Report, RunConfig, report_csv, report_json, run_script
from .script import SessionScript, parse_polynomial, parse_script, print_script
from .spread import (
    ColonCriterionReport,
    IdentityReport,
    IndependenceReport,
    SpreadReport,
    check_base_change,
    check_corollary_vanishing,
    check_lemma33_additivity,
    check_product_identity,
    check_self_product,
    colon_criterion_diagnostic,
    star_independence_diagnostic,
    star_spread_estimate,
    star_spread_hk_difference,
)

__all__ = [
    "__version__",
    "AlgebraError",
    "ContainmentError",
    "FrobeniusPowerError",
    "HomogeneityError",
    "InfiniteLengthError",
    "NotPrimeError",
    "PreconditionError",
    "ResourceLimitError",
    "RingMismatchError",
    "ScriptError",
    "ZeroDivisorError",
    "GroebnerBasis",
    "GuardConfig",
    "buchberger",
    "is_member",
    "krull_dimension",
    "normal_form",
    "set_default_guard",
    "standard_monomials",
    "use_guard",
    "Ideal",
    "bracket_power",
    "ideal_colon",
    "ideal_intersection",
    "ideal_product",
    "ideal_sum",
    "maximal_ideal",
    "min_gens",
    "INFINITE",
    "HKEstimate",
    "HKSample",
    "LengthValue",
    "ehk_estimate",
    "hk_function",
    "length_quotient",
    "length_subquotient",
    "DEGLEX",
    "DEGREVLEX",
    "LEX",
    "AuxBlockOrder",
    "MonomialOrder",
    "order_by_name",
    "FrobeniusExponent",
    "Monomial",
    "Polynomial",
    "PrimeField",
    "RingSpec",
    "poly_add",
    "poly_mul",
    "poly_qth_power",
    "Report",
    "RunConfig",
    "report_csv",
    "report_json",
    "run_script",
    "SessionScript",
    "parse_polynomial",
    "parse_script",
    "print_script",
    "ColonCriterionReport",
    "IdentityReport",
    "IndependenceReport",
    "SpreadReport",
    "check_base_change",
    "check_corollary_vanishing",
    "check_lemma33_additivity",
    "check_product_identity",
    "check_self_product",
    "colon_criterion_diagnostic",
    "star_independence_diagnostic",
    "star_spread_estimate",
    "star_spread_hk_difference",
]
