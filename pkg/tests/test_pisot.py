from fractions import Fraction

import pytest
from hypothesis import given

from pisot_triples import (
    DomainError,
    IntPoly,
    RatPoly,
    RejectionReason,
    certify_pisot,
    family_poly,
    is_unit,
)
from pisot_triples.poly import power_traces
from pisot_triples.roots import Interval
from strategies import perron_pisot


def test_golden_ratio_accepted():
    cert = certify_pisot(IntPoly([-1, -1, 1]))
    assert cert and cert.degree == 2
    assert Fraction(1618, 1000) < cert.dominant_lower < Fraction(1619, 1000)


def test_plastic_accepted_with_tight_enclosure():
    cert = certify_pisot(IntPoly([-1, -1, 0, 1]))
    assert cert
    box = cert.dominant_box
    assert box.is_real and box.re_lo > 1
    assert box.re_lo <= Fraction("1.3247179572") + Fraction(1, 10 ** 10)
    assert box.re_hi >= Fraction("1.3247179572")
    assert box.re_hi - box.re_lo <= Fraction(1, 10 ** 10)
    assert cert.max_conjugate_modulus < 1


@pytest.mark.parametrize("cs,reason", [
    ([-2, 0, 1], RejectionReason.CONJUGATE_OUTSIDE_UNIT_DISK),
    ([4, -4, 1], RejectionReason.REDUCIBLE),
    ([1, 1], RejectionReason.DEGREE_LT_2),
    ([-1, -1, 2], RejectionReason.NON_MONIC),
    ([-1, 1, 1], RejectionReason.DOMINANT_NOT_REAL_POSITIVE),
    ([1, 0, 1], RejectionReason.DOMINANT_NOT_REAL_POSITIVE),
    ([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1], RejectionReason.CONJUGATE_OUTSIDE_UNIT_DISK),
    ([1, 0, 1, -1, -1, 1], RejectionReason.CONJUGATE_OUTSIDE_UNIT_DISK),
])
def test_rejections(cs, reason):
    rej = certify_pisot(IntPoly(cs))
    assert not rej and rej.reason is reason


def test_rational_input_is_non_monic():
    assert certify_pisot(RatPoly([Fraction(1, 2), -1, 1])).reason is RejectionReason.NON_MONIC


@pytest.mark.parametrize("cs,unit", [
    ([-1, -1, 0, 1], True),
    ([-2, -2, 1], False),
    ([1, -3, 1], True),
])
def test_is_unit(cs, unit):
    cert = certify_pisot(IntPoly(cs))
    assert cert and is_unit(cert) is unit and cert.is_unit is unit


def test_family_expansions():
    assert family_poly("tower-a", 3) == IntPoly([-1, -1, -1, -1, -1, -1, 0, 1])
    assert family_poly("tower-b", 3) == IntPoly([-1, 0, -1, 0, -1, 0, -1, 1])
    assert family_poly("fib-perturbed", 3) == IntPoly([1, 0, 1, -1, -1, 1])
    assert str(family_poly("tower-a", 3)) == "x^7 - x^5 - x^4 - x^3 - x^2 - x - 1"
    with pytest.raises(DomainError):
        family_poly("tower-a", 2)
    with pytest.raises(DomainError):
        family_poly("salem", 3)


@pytest.mark.parametrize("family", ["tower-a", "tower-b"])
@pytest.mark.parametrize("k", [3, 4, 5])
def test_tower_families_certify(family, k):
    cert = certify_pisot(family_poly(family, k))
    assert cert and cert.degree == 2 * k + 1


@given(perron_pisot())
def test_modulus_product_encloses_constant(cs):
    cert = certify_pisot(IntPoly(cs))
    assert cert
    prod = Interval.point(1)
    for b in cert.boxes:
        prod = prod * b.modulus()
    assert prod.contains(abs(cs[0]))


@given(perron_pisot())
def test_traces_track_dominant_power(cs):
    p = IntPoly(cs)
    cert = certify_pisot(p)
    k, m = p.degree, cert.max_conjugate_modulus
    n = 1
    while (k - 1) * m ** n >= Fraction(1, 2):
        n += 1
    tr = power_traces(p, n + 5)
    # enough bits that the enclosure of alpha^(n+5) stays narrow
    bits = (n + 5) * cert.dominant_box.re_hi.__ceil__().bit_length() + 64
    alpha = certify_pisot(p, bits).dominant_box.re
    for j in range(n, n + 6):
        assert (Interval.point(tr[j]) - alpha ** j).mag() < 1
