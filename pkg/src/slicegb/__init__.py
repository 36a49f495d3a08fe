"""Exact Groebner bases over the rationals, hyperplane slicing, and
slice-wise reconstruction of ideals.

The package is organized bottom-up: ``rings`` and ``poly`` hold the
sparse arithmetic, ``orders`` the term-order comparators, ``groebner``
the basis engine, ``sections``/``families``/``hough`` the slicing,
parametric-family, and point-locus layers, and ``cli`` a batch front
end.  The names below are the working vocabulary; anything not listed
here is an implementation detail that may move.
"""

from .errors import (
    DenominatorVanishes,
    DependentParameters,
    HypothesisViolation,
    Inconsistent,
    LTDrift,
    MembershipFailed,
    NonGenericSlices,
    NonPrincipal,
    NotLinearInParams,
    ResourceLimit,
    RetryLimitExceeded,
    SliceGBError,
    Underdetermined,
    ZeroDivisor,
)
from .families import (
    Family,
    basis_denominator,
    coefficient_scheme,
    family_basis,
    family_section,
    nonconstant_coefficients,
    parameters_independent,
    specialize_basis,
    specialize_family,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    MonomialIdeal,
    buchberger,
    colon_ideal,
    dimension,
    eliminate,
    groebner_basis,
    intersect_principal,
    is_member,
    monomial_dimension,
    normal_form,
    reduce_basis,
    spolynomial,
)
from .hough import (
    detect,
    generic_hough_dimension,
    hough_ideal,
    reconstruct_surface,
    solve_linear_hough,
)
from .orders import (
    DegLex,
    DegRevLex,
    Elim,
    Lex,
    PivotDegRev,
    TermOrder,
    deglex,
    degrevlex,
    elim_order,
    lex,
    order_by_name,
    pivot_degrev,
)
from .parsing import ParseError, format_polynomial, parse_polynomial, parse_ring
from .poly import Polynomial, compose
from .ratfunc import RationalFunction
from .rings import Ring, ring
from .sections import (
    BasisMembership,
    HomLinearForm,
    LinearForm,
    MapMembership,
    SliceFamily,
    TrustMembership,
    common_lifting,
    gamma_stream,
    homogeneous_section_basis,
    implicitize,
    reconstruct_basis,
    section_basis,
    verify_lifting,
)

__version__ = "0.1.0"

__all__ = [
    "BasisMembership",
    "DegLex",
    "DegRevLex",
    "DenominatorVanishes",
    "DependentParameters",
    "Elim",
    "Family",
    "GroebnerBasis",
    "HomLinearForm",
    "HypothesisViolation",
    "Ideal",
    "Inconsistent",
    "LTDrift",
    "Lex",
    "LinearForm",
    "MapMembership",
    "MembershipFailed",
    "MonomialIdeal",
    "NonGenericSlices",
    "NonPrincipal",
    "NotLinearInParams",
    "ParseError",
    "PivotDegRev",
    "Polynomial",
    "RationalFunction",
    "ResourceLimit",
    "RetryLimitExceeded",
    "Ring",
    "SliceFamily",
    "SliceGBError",
    "TermOrder",
    "TrustMembership",
    "Underdetermined",
    "ZeroDivisor",
    "basis_denominator",
    "buchberger",
    "coefficient_scheme",
    "colon_ideal",
    "common_lifting",
    "compose",
    "deglex",
    "degrevlex",
    "detect",
    "dimension",
    "elim_order",
    "eliminate",
    "family_basis",
    "family_section",
    "format_polynomial",
    "gamma_stream",
    "generic_hough_dimension",
    "groebner_basis",
    "homogeneous_section_basis",
    "hough_ideal",
    "implicitize",
    "intersect_principal",
    "is_member",
    "lex",
    "monomial_dimension",
    "nonconstant_coefficients",
    "normal_form",
    "order_by_name",
    "parameters_independent",
    "parse_polynomial",
    "parse_ring",
    "pivot_degrev",
    "reconstruct_basis",
    "reconstruct_surface",
    "reduce_basis",
    "ring",
    "section_basis",
    "solve_linear_hough",
    "specialize_basis",
    "specialize_family",
    "spolynomial",
    "verify_lifting",
]
