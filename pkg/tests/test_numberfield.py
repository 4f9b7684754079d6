from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import sympy_galois_order, sympy_has_square_root
from pisot_triples import (
    CapExceeded,
    DomainError,
    FieldMismatchError,
    IntPoly,
    NFElem,
    NumberField,
    build_splitting_field,
    nf_arithmetic,
    nf_minpoly,
    nf_sqrt,
    nf_trace_norm,
)
from pisot_triples.poly import RatPoly
from strategies import monic_irreducible, rationals

PHI = NumberField(IntPoly([-1, -1, 1]))
THETA = NumberField(IntPoly([-1, -1, 0, 1]))


def el(field, *coords):
    return NFElem(field, coords)


# -- arithmetic --------------------------------------------------------------

def test_arithmetic_examples():
    phi = PHI.gen()
    assert nf_arithmetic(phi, phi, "mul") == el(PHI, 1, 1)
    assert nf_arithmetic(PHI.one(), phi, "div") == el(PHI, -1, 1)
    th = THETA.gen()
    assert nf_arithmetic(th, th * th, "mul") == el(THETA, 1, 1)
    assert nf_arithmetic(phi, PHI(2), "add") == el(PHI, 2, 1)
    assert nf_arithmetic(phi, PHI(2), "sub") == el(PHI, -2, 1)


def test_field_mismatch_and_zero_division():
    with pytest.raises(FieldMismatchError):
        nf_arithmetic(PHI.gen(), THETA.gen(), "add")
    with pytest.raises(ZeroDivisionError):
        nf_arithmetic(PHI.gen(), PHI.zero(), "div")


def test_reducible_field_rejected():
    with pytest.raises(DomainError):
        NumberField(IntPoly([-1, 0, 1]))


@pytest.mark.parametrize("a,trace,norm", [
    (el(PHI, 1), 2, 1),
    (el(THETA, 1), 3, 1),
    (PHI.gen(), 1, -1),
    (THETA.gen(), 0, 1),
])
def test_trace_norm_examples(a, trace, norm):
    assert nf_trace_norm(a) == (trace, norm)


@pytest.mark.parametrize("a,mp", [
    (el(PHI, 7), RatPoly([-7, 1])),
    (el(PHI, -1, 2), RatPoly([-5, 0, 1])),
    (el(PHI, 1, 1), RatPoly([1, -3, 1])),
])
def test_minpoly_examples(a, mp):
    assert nf_minpoly(a) == mp


@st.composite
def field_elements(draw, min_deg=2, max_deg=4):
    field = NumberField(IntPoly(draw(monic_irreducible(min_deg, max_deg))), check=False)
    coords = draw(st.lists(rationals(), min_size=field.degree, max_size=field.degree))
    return NFElem(field, coords)


@given(field_elements(max_deg=6))
def test_minpoly_annihilates(a):
    mp = nf_minpoly(a)
    assert mp.is_monic() and a.field.degree % mp.degree == 0
    assert mp(a).is_zero()


@given(field_elements(max_deg=6))
def test_trace_norm_from_minpoly(a):
    tr, nm = nf_trace_norm(a)
    mp = nf_minpoly(a)
    k, d = a.field.degree, mp.degree
    assert nm == ((-1) ** d * mp.coeffs[0]) ** (k // d)
    assert tr == (k // d) * -mp.coeffs[d - 1]


@given(field_elements(max_deg=4), field_elements(max_deg=4))
def test_field_axioms(a, b):
    if a.field != b.field:
        b = NFElem(a.field, b.coords[: a.field.degree])
    assert a * b == b * a
    assert (a + b) * a == a * a + b * a
    if not b.is_zero():
        assert (a / b) * b == a


# -- square roots ------------------------------------------------------------

def test_sqrt_examples():
    assert nf_sqrt(el(PHI, 4)) == el(PHI, 2)
    assert nf_sqrt(el(PHI, 5)) == el(PHI, -1, 2)
    assert nf_sqrt(PHI.gen()) is None


@st.composite
def maybe_squares(draw):
    a = draw(field_elements(max_deg=4))
    if draw(st.booleans()):
        a = a * a
    return a


@given(maybe_squares())
def test_sqrt_witness_or_no_root(a):
    w = nf_sqrt(a)
    if w is not None:
        assert w * w == a
        top = next((c for c in reversed(w.coords) if c), 0)
        assert top >= 0
    else:
        assert not sympy_has_square_root(a.field.defining_poly.coeffs, a.coords)


@given(field_elements(max_deg=4))
def test_squares_are_found(b):
    w = nf_sqrt(b * b)
    assert w is not None and (w == b or w == -b)


# -- splitting fields ---------------------------------------------------------

@pytest.mark.parametrize("cs,deg", [
    ([-1, -1, 1], 2),
    ([-1, -1, 0, 1], 6),
    ([-1, -3, 0, 1], 3),
    ([-1, -1, -1, 1], 6),
    ([-2, 0, 0, 0, 1], 8),
])
def test_splitting_degree_examples(cs, deg):
    sf = build_splitting_field(IntPoly(cs))
    assert sf.degree == deg
    assert len(sf.root_images) == len(cs) - 1
    assert len(set(sf.root_images)) == len(cs) - 1


def test_splitting_field_cap_and_reducible():
    with pytest.raises(CapExceeded) as info:
        build_splitting_field(IntPoly([-1, -1, 0, 1]), degree_cap=4)
    assert info.value.partial_degree >= 1
    with pytest.raises(CapExceeded):
        build_splitting_field(IntPoly([-1, -1, 0, 0, 0, 1]), degree_cap=64)
    with pytest.raises(DomainError):
        build_splitting_field(IntPoly([-1, 0, 1]))


@given(monic_irreducible(min_deg=2, max_deg=4))
def test_splitting_field_roots(cs):
    p = IntPoly(cs)
    sf = build_splitting_field(p)
    assert sf.degree == sf.primitive_poly.degree
    assert all(p(r).is_zero() for r in sf.root_images)
    assert len(set(sf.root_images)) == p.degree
    assert sf.degree == sympy_galois_order(cs)
    assert factorial(p.degree) % sf.degree == 0


def test_embed_commutes_with_arithmetic():
    sf = build_splitting_field(THETA.defining_poly)
    a, b = el(THETA, 1, Fraction(1, 2), -3), el(THETA, 0, 2, 1)
    assert sf.embed(a * b) == sf.embed(a) * sf.embed(b)
    assert sf.embed(a + b) == sf.embed(a) + sf.embed(b)
