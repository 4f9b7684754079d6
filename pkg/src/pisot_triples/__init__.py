"""Exact arithmetic for Pisot-type recurrences and Diophantine triples in them."""
from .applicability import (
    ApplicabilityReport,
    Obstruction,
    SquarenessVerdict,
    Status,
    Verdict,
    squareness_in_splitting_field,
    theorem_applicability,
)
from .cancel import CancelToken
from .errors import (
    BudgetExceeded,
    Cancelled,
    CapExceeded,
    DomainError,
    FieldMismatchError,
    InternalError,
    PisotTriplesError,
    UndecidableError,
)
from .factor import factor_over_rationals, is_irreducible
from .numberfield import (
    NFElem,
    NumberField,
    SplittingField,
    build_splitting_field,
    factor_over_field,
    nf_arithmetic,
    nf_minpoly,
    nf_sqrt,
    nf_trace_norm,
)
from .pisot import FAMILIES, PisotCertificate, PisotRejection, RejectionReason, certify_pisot, family_poly, is_unit
from .poly import IntPoly, RatPoly, parse_poly, poly_gcd, power_traces, resultant
from .recurrence import (
    FIBONACCI,
    LUCAS,
    PLASTIC_EXCEPTIONAL,
    TRIBONACCI,
    BinetData,
    RecurrenceSpec,
    binet_coefficients,
    build_from_trace,
    eval_range,
    k_bonacci,
    validate_pisot_type,
    value_at,
)
from .roots import ComplexBox, Interval, isolate_roots
from .search import (
    GcdScanReport,
    MembershipIndex,
    TripleHit,
    build_index,
    dplus_extension,
    euler_quadruple,
    factorize,
    find_triples,
    gcd_scan,
)

__version__ = "0.1.0"
