from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pisot_triples import (
    FIBONACCI,
    LUCAS,
    PLASTIC_EXCEPTIONAL,
    TRIBONACCI,
    CancelToken,
    Cancelled,
    IntPoly,
    NFElem,
    NumberField,
    Obstruction,
    RecurrenceSpec,
    Status,
    Verdict,
    binet_coefficients,
    family_poly,
    k_bonacci,
    squareness_in_splitting_field,
    theorem_applicability,
)
from pisot_triples.applicability import is_rational_square
from strategies import initial_values, perron_pisot, rationals

PHI = NumberField(IntPoly([-1, -1, 1]))
THETA = NumberField(IntPoly([-1, -1, 0, 1]))


def test_fibonacci_squareness_examples():
    f1 = binet_coefficients(FIBONACCI).f1
    v = squareness_in_splitting_field(f1)
    assert v.status is Status.NOT_SQUARE and v.obstruction is Obstruction.NORM
    assert f1.norm() == Fraction(-1, 5)
    v = squareness_in_splitting_field(f1 * PHI.gen())
    assert v.status is Status.NOT_SQUARE and v.obstruction is Obstruction.NORM
    assert (f1 * PHI.gen()).norm() == Fraction(1, 5)


def test_five_is_square_in_golden_field():
    v = squareness_in_splitting_field(PHI(5))
    assert v.is_square and v.witness == NFElem(PHI, [-1, 2])


def test_cap_gives_undecided():
    v = squareness_in_splitting_field(NFElem(THETA, [1, 1, 1]), cap=2)
    assert v.status is Status.UNDECIDED


def test_negative_embedding_obstruction():
    # norm 1 passes the norm test, but -1 is negative in a real field
    v = squareness_in_splitting_field(PHI(-1))
    assert v.is_not_square and v.obstruction is Obstruction.NEGATIVE_EMBEDDING


def test_tribonacci_is_finite_by_nonsquare():
    r = theorem_applicability(TRIBONACCI)
    assert r.verdict is Verdict.NONSQUARE
    assert r.nonsquare_f1.is_not_square and r.nonsquare_f1alpha.is_not_square
    assert r.splitting_degree == 6


def test_plastic_exceptional_is_unknown_with_witness():
    r = theorem_applicability(PLASTIC_EXCEPTIONAL)
    assert r.verdict is Verdict.UNKNOWN and r.k == 3
    squares = [v for v in (r.nonsquare_f1, r.nonsquare_f1alpha) if v.is_square]
    assert squares
    for v in squares:
        assert v.witness * v.witness == v.element
        assert v.witness.field.degree == 6
    # f1 = 4 - 3a^2 is the square; f1*a is not
    assert r.nonsquare_f1.is_square and r.nonsquare_f1alpha.is_not_square


def test_lucas_f1_is_one():
    r = theorem_applicability(LUCAS)
    assert r.verdict is Verdict.UNKNOWN and r.nonsquare_f1.is_square


@pytest.mark.parametrize("spec", [
    k_bonacci(6),
    RecurrenceSpec(family_poly("tower-a", 3), (0, 0, 0, 0, 0, 0, 1)),
    RecurrenceSpec(family_poly("tower-b", 3), (1, 2, 3, 4, 5, 6, 7)),
], ids=str)
def test_degree_clause(spec):
    r = theorem_applicability(spec)
    assert r.verdict is Verdict.K6
    assert r.nonsquare_f1 is None


def test_k5_nonunit_clause():
    # Perron: x^5 - 6x^4 + x^3 + x + 2 is Pisot with constant 2
    spec = RecurrenceSpec(IntPoly([2, 1, 0, 1, -6, 1]), (0, 0, 0, 0, 1))
    r = theorem_applicability(spec)
    assert not r.alpha_is_unit and r.verdict is Verdict.K5_NONUNIT


def test_force_squareness_keeps_precedence():
    r = theorem_applicability(k_bonacci(6), cap=2, force_squareness=True)
    assert r.verdict is Verdict.K6
    assert r.nonsquare_f1.status is Status.UNDECIDED


def test_cancellation_token():
    tok = CancelToken()
    tok.cancel()
    with pytest.raises(Cancelled):
        theorem_applicability(TRIBONACCI, token=tok)


@st.composite
def small_field_elements(draw):
    field = NumberField(IntPoly(draw(perron_pisot(max_deg=3))), check=False)
    coords = draw(st.lists(rationals(), min_size=field.degree, max_size=field.degree))
    e = NFElem(field, coords)
    if draw(st.booleans()):
        e = e * e
    if e.is_zero():
        e = field.one()
    return e


@given(small_field_elements())
def test_verdicts_are_checkable(e):
    v = squareness_in_splitting_field(e)
    assert v.status is not Status.UNDECIDED
    if v.is_square:
        assert v.witness * v.witness == v.element
    if v.obstruction is Obstruction.NORM:
        mp = e.minpoly()
        d, k = mp.degree, e.field.degree
        norm = ((-1) ** d * mp.coeffs[0]) ** (k // d)
        m = v.splitting_degree // k
        assert not is_rational_square(Fraction(norm) ** m)
    if v.obstruction is Obstruction.NEGATIVE_EMBEDDING:
        assert any(b.re_hi < 0 for b in e.embeddings(256))


@given(small_field_elements(), st.integers(1, 5))
def test_raising_cap_never_flips(e, cap):
    low = squareness_in_splitting_field(e, cap=cap)
    high = squareness_in_splitting_field(e, cap=64)
    if low.status is not Status.UNDECIDED:
        assert low.status is high.status


@st.composite
def degree6_specs(draw):
    cs = draw(perron_pisot(min_deg=6, max_deg=6))
    return RecurrenceSpec(IntPoly(cs), tuple(draw(initial_values(6))))


@given(degree6_specs())
def test_degree_six_never_unknown(spec):
    r = theorem_applicability(spec)
    assert r.verdict is Verdict.K6
