import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import sequence
from pisot_triples import (
    FIBONACCI,
    LUCAS,
    PLASTIC_EXCEPTIONAL,
    TRIBONACCI,
    DomainError,
    IntPoly,
    NFElem,
    RecurrenceSpec,
    RejectionReason,
    binet_coefficients,
    build_from_trace,
    eval_range,
    k_bonacci,
    validate_pisot_type,
    value_at,
)
from pisot_triples.recurrence import NonIntegralTraceError, _trace_window, binet_enclosure, dominance
from strategies import initial_values, perron_pisot

SHIPPED = [FIBONACCI, LUCAS, TRIBONACCI, PLASTIC_EXCEPTIONAL, k_bonacci(4), k_bonacci(5)]


def test_spec_validation():
    with pytest.raises(DomainError):
        RecurrenceSpec(IntPoly([-1, -1, 1]), (0, 1, 1))
    with pytest.raises(DomainError):
        RecurrenceSpec(IntPoly([-1, -1, 2]), (0, 1))
    assert FIBONACCI.coefficients == (1, 1)


def test_validate_pisot_type():
    assert validate_pisot_type(TRIBONACCI)
    rej = validate_pisot_type(RecurrenceSpec(IntPoly([-2, 0, 1]), (1, 1)))
    assert rej.reason is RejectionReason.CONJUGATE_OUTSIDE_UNIT_DISK
    rej = validate_pisot_type(RecurrenceSpec(IntPoly([-1, -1, 1]), (0, 0)))
    assert rej.reason is RejectionReason.ZERO_SEQUENCE


@pytest.mark.parametrize("spec,lo,hi,want", [
    (FIBONACCI, 0, 10, [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]),
    (LUCAS, 0, 6, [2, 1, 3, 4, 7, 11, 18]),
    (TRIBONACCI, 0, 9, [0, 0, 1, 1, 2, 4, 7, 13, 24, 44]),
    (PLASTIC_EXCEPTIONAL, 0, 7, [6, -9, 2, -3, -7, -1, -10, -8]),
])
def test_eval_range_examples(spec, lo, hi, want):
    assert eval_range(spec, lo, hi) == want


def test_value_at_large_index():
    assert value_at(FIBONACCI, 100) == 354224848179261915075
    with pytest.raises(DomainError):
        value_at(FIBONACCI, -1)


@pytest.mark.parametrize("spec", SHIPPED, ids=str)
def test_recursion_agrees_with_matrix_powering(spec):
    rng = random.Random(str(spec))
    seq = eval_range(spec, 0, 10 ** 4)
    for n in sorted(rng.sample(range(10 ** 4 + 1), 50)):
        assert value_at(spec, n) == seq[n]


@st.composite
def pisot_specs(draw, max_deg=6):
    cs = draw(perron_pisot(max_deg=max_deg))
    iv = draw(initial_values(len(cs) - 1))
    return RecurrenceSpec(IntPoly(cs), tuple(iv))


@given(pisot_specs(), st.integers(0, 300))
def test_matrix_powering_random(spec, n):
    assert value_at(spec, n) == sequence(spec.char_poly.coeffs, spec.initial_values, n)[n]


# -- Binet data ------------------------------------------------------------------

def test_binet_examples():
    assert binet_coefficients(LUCAS).f1 == NFElem(binet_coefficients(LUCAS).field, [1])
    fib = binet_coefficients(FIBONACCI)
    assert fib.d == 5 and fib.f.coords == (-1, 2)
    assert fib.f1.coords == (Fraction(-1, 5), Fraction(2, 5))
    tri = binet_coefficients(TRIBONACCI)
    assert _trace_window(tri.field, tri.f1.coords, 20) == eval_range(TRIBONACCI, 0, 20)
    assert tri.d == 22


@pytest.mark.parametrize("spec", [FIBONACCI, LUCAS, TRIBONACCI, PLASTIC_EXCEPTIONAL], ids=str)
def test_trace_identity_to_fifty(spec):
    b = binet_coefficients(spec)
    assert _trace_window(b.field, b.f1.coords, 50) == eval_range(spec, 0, 50)


def test_from_trace_examples():
    phi = IntPoly([-1, -1, 1])
    assert build_from_trace(phi, [1], 1).initial_values == (2, 1)
    assert build_from_trace(phi, [-1, 2], 5).initial_values == (0, 1)
    with pytest.raises(NonIntegralTraceError) as info:
        build_from_trace(phi, [-1, 2], 7)
    assert info.value.index == 1 and info.value.value == Fraction(5, 7)
    with pytest.raises(DomainError):
        build_from_trace(IntPoly([-2, 0, 1]), [1], 1)
    with pytest.raises(DomainError):
        build_from_trace(phi, [0, 0], 1)


@st.composite
def trace_data(draw):
    cs = draw(perron_pisot(max_deg=5))
    k = len(cs) - 1
    f = draw(st.lists(st.integers(-4, 4), min_size=k, max_size=k))
    assume(any(f))
    return IntPoly(cs), f


@given(trace_data(), st.integers(1, 12))
def test_binet_inverts_from_trace(data, div):
    p, f = data
    k = p.degree
    from pisot_triples import NumberField

    field = NumberField(p, check=False)
    traces = [int(t) for t in _trace_window(field, [Fraction(c) for c in f], k - 1)]
    g = 0
    for t in traces:
        g = gcd(g, t)
    d = gcd(g, div) or 1
    spec = build_from_trace(p, f, d)
    b = binet_coefficients(spec)
    assert b.f1 == NFElem(b.field, f) / d
    content = 0
    for c in f:
        content = gcd(content, c)
    if gcd(content, d) == 1:
        assert b.d == d and list(b.f.coords) == f


@given(pisot_specs(max_deg=5))
def test_binet_enclosure_contains_terms(spec):
    b = binet_coefficients(spec)
    seq = eval_range(spec, 0, 50)
    for n in range(0, 51, 5):
        box = binet_enclosure(b, n, 256)
        assert box.re.contains(seq[n]) and box.im.contains(0)


@pytest.mark.parametrize("spec", [FIBONACCI, LUCAS, TRIBONACCI, PLASTIC_EXCEPTIONAL], ids=str)
def test_binet_enclosure_shipped(spec):
    b = binet_coefficients(spec)
    seq = eval_range(spec, 0, 50)
    for n in range(51):
        assert binet_enclosure(b, n, 256).re.contains(seq[n])


@given(pisot_specs(max_deg=5))
def test_sign_stabilizes_past_threshold(spec):
    dom = dominance(binet_coefficients(spec))
    n0 = dom.threshold(0)
    for v in eval_range(spec, n0, n0 + 30):
        assert v != 0 and (v > 0) == (dom.sign > 0)


def test_plastic_exceptional_is_eventually_negative():
    dom = dominance(binet_coefficients(PLASTIC_EXCEPTIONAL))
    assert dom.sign == -1
    assert all(v < 0 for v in eval_range(PLASTIC_EXCEPTIONAL, dom.threshold(0), 200))
