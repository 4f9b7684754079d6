"""Certification of Pisot polynomials and the explicit Pisot families."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, UndecidableError
from .factor import is_irreducible
from .poly import IntPoly, RatPoly
from .roots import ComplexBox, isolate_roots

__all__ = [
    "RejectionReason",
    "PisotRejection",
    "PisotCertificate",
    "certify_pisot",
    "is_unit",
    "family_poly",
    "FAMILIES",
    "MAX_PRECISION_BITS",
]

MAX_PRECISION_BITS = 4096


class RejectionReason(str, enum.Enum):
    NON_MONIC = "non-monic"
    REDUCIBLE = "reducible"
    DEGREE_LT_2 = "degree<2"
    CONJUGATE_OUTSIDE_UNIT_DISK = "conjugate-outside-unit-disk"
    DOMINANT_NOT_REAL_POSITIVE = "dominant-not-real-positive"
    ZERO_SEQUENCE = "zero-sequence"


@dataclass(frozen=True)
class PisotRejection:
    poly: RatPoly
    reason: RejectionReason
    detail: str = ""

    accepted = False

    def __bool__(self):
        return False


@dataclass(frozen=True)
class PisotCertificate:
    """Proof that ``poly`` is the minimal polynomial of a Pisot number.

    ``dominant_box`` is a real box whose lower end exceeds 1;
    each of ``conjugate_boxes`` has modulus upper bound below 1. Both
    comparisons were done exactly on rationals.
    """

    poly: IntPoly
    dominant_box: ComplexBox
    conjugate_boxes: tuple[ComplexBox, ...]
    is_unit: bool
    precision_bits: int = 64
    accepted: bool = field(default=True, init=False)

    def __bool__(self):
        return True

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def dominant_lower(self) -> Fraction:
        return self.dominant_box.re_lo

    @property
    def max_conjugate_modulus(self) -> Fraction:
        """Certified upper bound on max |a_i| over the conjugates."""
        return max(b.modulus_upper() for b in self.conjugate_boxes)

    @property
    def boxes(self) -> tuple[ComplexBox, ...]:
        """All root boxes, dominant first."""
        return (self.dominant_box,) + self.conjugate_boxes


def _is_reciprocal(p: IntPoly) -> bool:
    rev = p.reverse()
    return rev == p or rev == -p


def _classify(box: ComplexBox):
    """+1 if certainly |z| > 1, -1 if certainly |z| < 1, 0 if undecided."""
    m2 = box.modulus_sq()
    if m2.lo > 1:
        return 1
    if m2.hi < 1:
        return -1
    return 0


def certify_pisot(p: RatPoly, precision_bits: int = 64):
    """Certify or reject ``p`` as the minimal polynomial of a Pisot number.

    Returns a :class:`PisotCertificate` on success and a
    :class:`PisotRejection` (falsy) otherwise. Precision doubles until every
    root is certified strictly inside or outside the unit circle; raises
    :class:`UndecidableError` past ``MAX_PRECISION_BITS``.
    """
    if not isinstance(p, IntPoly) or not p.is_monic():
        return PisotRejection(p, RejectionReason.NON_MONIC,
                              "leading coefficient must be 1 and coefficients integers")
    if p.degree < 2:
        return PisotRejection(p, RejectionReason.DEGREE_LT_2, f"degree {p.degree}")
    if not is_irreducible(p):
        return PisotRejection(p, RejectionReason.REDUCIBLE, "not irreducible over Q")
    if p.degree > 2 and _is_reciprocal(p):
        # roots pair up as z, 1/z: at least two roots have modulus >= 1
        return PisotRejection(p, RejectionReason.CONJUGATE_OUTSIDE_UNIT_DISK,
                              "self-reciprocal polynomial of degree > 2")
    if p.degree == 2 and p.coeffs[0] == 1 and abs(p.coeffs[1]) < 2:
        # x^2 + a x + 1 with |a| < 2: both roots on the unit circle
        return PisotRejection(p, RejectionReason.DOMINANT_NOT_REAL_POSITIVE,
                              "cyclotomic: no root of modulus > 1")
    bits = precision_bits
    while True:
        boxes = isolate_roots(p, bits)
        cls = [_classify(b) for b in boxes]
        if all(cls):
            break
        if bits >= MAX_PRECISION_BITS:
            raise UndecidableError(
                f"could not separate root moduli from 1 at {bits} bits for {p}")
        bits *= 2
    outside = [b for b, c in zip(boxes, cls) if c > 0]
    if len(outside) >= 2:
        return PisotRejection(p, RejectionReason.CONJUGATE_OUTSIDE_UNIT_DISK,
                              f"{len(outside)} roots of modulus > 1")
    if not outside:
        return PisotRejection(p, RejectionReason.DOMINANT_NOT_REAL_POSITIVE,
                              "no root of modulus > 1")
    dom = outside[0]
    if not dom.is_real or dom.re_hi < 0:
        return PisotRejection(p, RejectionReason.DOMINANT_NOT_REAL_POSITIVE,
                              f"dominant root lies in {dom}")
    assert dom.re_lo > 1
    conj = tuple(b for b in boxes if b is not dom)
    return PisotCertificate(p, dom, conj, abs(p.coeffs[0]) == 1, bits)


def is_unit(cert: PisotCertificate) -> bool:
    """Whether the Pisot number is a unit, i.e. the constant term is +-1."""
    return abs(cert.poly.coeffs[0]) == 1


FAMILIES = ("tower-a", "tower-b", "fib-perturbed")


def family_poly(family: str, k: int) -> IntPoly:
    """Expanded member ``k`` of one of the named polynomial families.

    * ``tower-a``:       x^(2k+1) - (x^(2k) - 1)/(x - 1)
    * ``tower-b``:       x^(2k+1) - (x^(2k+2) - 1)/(x^2 - 1)
    * ``fib-perturbed``: x^k (x^2 - x - 1) + x^2 + 1
    """
    if k < 3:
        raise DomainError("family parameter k must be at least 3")
    if family == "tower-a":
        cs = [-1] * (2 * k) + [0, 1]
    elif family == "tower-b":
        cs = [0] * (2 * k + 1) + [1]
        for i in range(k + 1):
            cs[2 * i] -= 1
    elif family == "fib-perturbed":
        cs = [0] * (k + 3)
        cs[k + 2] += 1
        cs[k + 1] -= 1
        cs[k] -= 1
        cs[2] += 1
        cs[0] += 1
    else:
        raise DomainError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return IntPoly(cs)
