"""Deciding which finiteness criterion covers a Pisot-type recurrence.

Three sufficient conditions for finitely many Diophantine triples:

* neither f1 nor f1*a is a square in the splitting field K of the
  characteristic polynomial;
* k >= 5 and the Pisot root a is not a unit;
* k >= 6.

The degree and unit clauses are free to check. The square clause needs
a decision procedure, implemented by :func:`squareness_in_splitting_field`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import CapExceeded, DomainError
from .numberfield import (
    DEFAULT_DEGREE_CAP,
    NFElem,
    SplittingField,
    build_splitting_field,
    nf_sqrt,
)
from .recurrence import BinetData, RecurrenceSpec, binet_coefficients, validate_pisot_type

__all__ = [
    "Status",
    "Obstruction",
    "Verdict",
    "SquarenessVerdict",
    "ApplicabilityReport",
    "squareness_in_splitting_field",
    "theorem_applicability",
    "is_rational_square",
]


class Status(str, enum.Enum):
    SQUARE = "square"
    NOT_SQUARE = "not_square"
    UNDECIDED = "undecided"


class Obstruction(str, enum.Enum):
    NORM = "norm-not-rational-square"
    NEGATIVE_EMBEDDING = "negative-in-real-embedding"
    NO_ROOT = "no-root-in-splitting-field"


class Verdict(str, enum.Enum):
    NONSQUARE = "finite-by-nonsquare"
    K5_NONUNIT = "finite-by-k5-nonunit"
    K6 = "finite-by-k6"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SquarenessVerdict:
    """Outcome of the squareness decision for one element of Q(a).

    For ``SQUARE`` the ``witness`` satisfies ``witness**2 == element`` in
    ``witness.field`` (Q(a) itself when step one already succeeds, else the
    splitting field, where ``element`` is then the embedded image).
    """

    status: Status
    element: NFElem
    witness: NFElem | None = None
    obstruction: Obstruction | None = None
    reason: str = ""
    splitting_degree: int | None = None

    @property
    def is_square(self) -> bool:
        return self.status is Status.SQUARE

    @property
    def is_not_square(self) -> bool:
        return self.status is Status.NOT_SQUARE


def is_rational_square(q) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def _certified_signs(e: NFElem, bits: int = 128, max_bits: int = 8192):
    """Signs of e under each real embedding; all roots are assumed real."""
    while bits <= max_bits:
        vals = e.embeddings(bits)
        signs = []
        for v in vals:
            if v.re_lo > 0:
                signs.append(1)
            elif v.re_hi < 0:
                signs.append(-1)
            else:
                break
        else:
            return signs
        bits *= 2
    return None


def squareness_in_splitting_field(e: NFElem, cap: int = DEFAULT_DEGREE_CAP,
                                  splitting: SplittingField | CapExceeded | None = None,
                                  token=None) -> SquarenessVerdict:
    """Decide whether ``e`` in Q(a) is a square in the Galois closure of Q(a).

    Steps, cheapest first: a square root inside Q(a); the norm test
    N(e)^m not a rational square, m = [K:Q(a)] odd; a negative real
    embedding when K is totally real; finally an exhaustive square-root
    search inside K. Returns ``UNDECIDED`` when K exceeds ``cap`` and the
    cheap tests are inconclusive.

    ``splitting`` may carry a prebuilt splitting field, or the
    :class:`CapExceeded` from an earlier failed build, to avoid rebuilding.
    """
    if e.is_zero():
        raise DomainError("squareness of zero is not meaningful here")
    base = e.field
    w = nf_sqrt(e)
    if w is not None:
        return SquarenessVerdict(Status.SQUARE, e, witness=w,
                                 reason="square already in Q(a)")

    sf, cap_msg = splitting, ""
    if isinstance(sf, CapExceeded):
        sf, cap_msg = None, str(splitting)
    elif sf is None:
        try:
            sf = build_splitting_field(base.defining_poly, cap, token=token)
        except CapExceeded as exc:
            cap_msg = str(exc)
    sdeg = sf.degree if sf is not None else None

    if sf is not None:
        m = sf.degree // base.degree
        if m % 2:
            Nm = e.norm() ** m
            if not is_rational_square(Nm):
                return SquarenessVerdict(
                    Status.NOT_SQUARE, e, obstruction=Obstruction.NORM,
                    reason=f"N(e)^{m} = {Nm} is not a rational square",
                    splitting_degree=sdeg)

    boxes = base.root_boxes()
    if all(b.is_real for b in boxes):
        signs = _certified_signs(e)
        if signs is not None and -1 in signs:
            return SquarenessVerdict(
                Status.NOT_SQUARE, e, obstruction=Obstruction.NEGATIVE_EMBEDDING,
                reason=f"negative under real embedding {signs.index(-1)}",
                splitting_degree=sdeg)

    if sf is None:
        return SquarenessVerdict(Status.UNDECIDED, e, reason=cap_msg)

    image = sf.embed(e)
    w = nf_sqrt(image)
    if w is not None:
        return SquarenessVerdict(Status.SQUARE, image, witness=w,
                                 reason=f"square root found in splitting field of degree {sdeg}",
                                 splitting_degree=sdeg)
    return SquarenessVerdict(Status.NOT_SQUARE, e, obstruction=Obstruction.NO_ROOT,
                             reason=f"t^2 - e has no root in the degree-{sdeg} splitting field",
                             splitting_degree=sdeg)


@dataclass(frozen=True)
class ApplicabilityReport:
    spec: RecurrenceSpec
    k: int
    alpha_is_unit: bool
    nonsquare_f1: SquarenessVerdict | None
    nonsquare_f1alpha: SquarenessVerdict | None
    verdict: Verdict
    clause_citations: tuple[str, ...]
    binet: BinetData = field(repr=False)
    splitting_degree: int | None = None


CLAUSE_K6 = "k>=6"
CLAUSE_K5 = "k>=5 and alpha not a unit"
CLAUSE_NONSQUARE = "neither f1 nor f1*alpha is a square in the splitting field"


def theorem_applicability(spec: RecurrenceSpec, cap: int = DEFAULT_DEGREE_CAP,
                          force_squareness: bool = False, token=None) -> ApplicabilityReport:
    """Pick the strongest applicable finiteness clause for ``spec``.

    The degree and unit clauses are checked first. The squareness
    computation runs only when neither applies, or when
    ``force_squareness`` is set (for reporting).
    """
    cert = validate_pisot_type(spec)
    if not cert:
        raise DomainError(f"not of Pisot type: {cert.reason.value}")
    binet = binet_coefficients(spec, cert)
    k = spec.k
    unit = cert.is_unit
    citations = []
    if k >= 6:
        citations.append(CLAUSE_K6)
    if k >= 5 and not unit:
        citations.append(CLAUSE_K5)
    v1 = v2 = None
    sdeg = None
    if not citations or force_squareness:
        try:
            sf = build_splitting_field(spec.char_poly, cap, token=token)
            sdeg = sf.degree
        except CapExceeded as exc:
            sf = exc
        f1 = binet.f1
        alpha = f1.field.gen()
        v1 = squareness_in_splitting_field(f1, cap, splitting=sf, token=token)
        v2 = squareness_in_splitting_field(f1 * alpha, cap, splitting=sf, token=token)
        if v1.is_not_square and v2.is_not_square:
            citations.append(CLAUSE_NONSQUARE)
    if CLAUSE_K6 in citations:
        verdict = Verdict.K6
    elif CLAUSE_K5 in citations:
        verdict = Verdict.K5_NONUNIT
    elif CLAUSE_NONSQUARE in citations:
        verdict = Verdict.NONSQUARE
    else:
        verdict = Verdict.UNKNOWN
    return ApplicabilityReport(spec, k, unit, v1, v2, verdict, tuple(citations), binet, sdeg)
