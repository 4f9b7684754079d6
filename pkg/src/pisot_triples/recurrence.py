"""Pisot-type linear recurrences: exact evaluation, Binet data, trace construction."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Sequence

from .errors import DomainError, InternalError
from .linalg import solve
from .numberfield import NFElem, NumberField
from .pisot import PisotCertificate, PisotRejection, RejectionReason, certify_pisot
from .poly import IntPoly, RatPoly
from .roots import ComplexBox, Interval

__all__ = [
    "RecurrenceSpec",
    "BinetData",
    "NonIntegralTraceError",
    "validate_pisot_type",
    "eval_range",
    "value_at",
    "binet_coefficients",
    "build_from_trace",
    "binet_enclosure",
    "dominance",
    "Dominance",
    "FIBONACCI",
    "LUCAS",
    "TRIBONACCI",
    "PLASTIC_EXCEPTIONAL",
    "k_bonacci",
]


@dataclass(frozen=True)
class RecurrenceSpec:
    """F_{n+k} = r_{k-1} F_{n+k-1} + ... + r_0 F_n with char_poly x^k - sum r_i x^i."""

    char_poly: IntPoly
    initial_values: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.char_poly, IntPoly) or not self.char_poly.is_monic():
            raise DomainError("characteristic polynomial must be monic with integer coefficients")
        iv = tuple(int(v) for v in self.initial_values)
        if len(iv) != self.char_poly.degree:
            raise DomainError(
                f"need {self.char_poly.degree} initial values, got {len(iv)}")
        object.__setattr__(self, "initial_values", iv)

    @property
    def k(self) -> int:
        return self.char_poly.degree

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Recurrence coefficients r_0 .. r_{k-1}."""
        return tuple(-c for c in self.char_poly.coeffs[:-1])

    def __str__(self):
        return f"{self.char_poly}; {','.join(map(str, self.initial_values))}"


def k_bonacci(k: int) -> RecurrenceSpec:
    """The k-generalized Fibonacci sequence 0, ..., 0, 1, 1, 2, ..."""
    return RecurrenceSpec(IntPoly([-1] * k + [1]), tuple([0] * (k - 1) + [1]))


FIBONACCI = RecurrenceSpec(IntPoly([-1, -1, 1]), (0, 1))
LUCAS = RecurrenceSpec(IntPoly([-1, -1, 1]), (2, 1))
TRIBONACCI = k_bonacci(3)
PLASTIC_EXCEPTIONAL = RecurrenceSpec(IntPoly([-1, -1, 0, 1]), (6, -9, 2))


def validate_pisot_type(spec: RecurrenceSpec) -> PisotCertificate | PisotRejection:
    if not any(spec.initial_values):
        return PisotRejection(spec.char_poly, RejectionReason.ZERO_SEQUENCE,
                              "all initial values are zero")
    return certify_pisot(spec.char_poly)


def _require_pisot(spec: RecurrenceSpec) -> PisotCertificate:
    cert = validate_pisot_type(spec)
    if not cert:
        raise DomainError(f"not of Pisot type: {cert.reason.value} ({cert.detail})")
    return cert


def eval_range(spec: RecurrenceSpec, n_lo: int, n_hi: int) -> list[int]:
    """F_{n_lo} .. F_{n_hi} by direct recursion."""
    if not 0 <= n_lo <= n_hi:
        raise DomainError("need 0 <= n_lo <= n_hi")
    k = spec.k
    r = spec.coefficients
    vals = list(spec.initial_values)
    while len(vals) <= n_hi:
        window = vals[-k:]
        vals.append(sum(ri * vi for ri, vi in zip(r, window)))
    return vals[n_lo:n_hi + 1]


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def value_at(spec: RecurrenceSpec, n: int) -> int:
    """F_n by binary powering of the companion matrix."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    k = spec.k
    if n < k:
        return spec.initial_values[n]
    # state (F_m, ..., F_{m+k-1}) -> (F_{m+1}, ..., F_{m+k})
    comp = [[1 if j == i + 1 else 0 for j in range(k)] for i in range(k - 1)]
    comp.append(list(spec.coefficients))
    result = [[int(i == j) for j in range(k)] for i in range(k)]
    e = n
    while e:
        if e & 1:
            result = _matmul(result, comp)
        comp = _matmul(comp, comp)
        e >>= 1
    return sum(x * v for x, v in zip(result[0], spec.initial_values))


@dataclass(frozen=True)
class BinetData:
    """Leading Binet coefficient f1 in Q(a), with f1 = f/d and f integral in Z[a]."""

    spec: RecurrenceSpec
    f1: NFElem
    d: int
    f: NFElem
    certificate: PisotCertificate

    @property
    def field(self) -> NumberField:
        return self.f1.field

    def conjugate_values(self, precision_bits: int = 256) -> list[ComplexBox]:
        """Enclosures of f1, f2, ..., fk (f1 first, matching the dominant root)."""
        return self.f1.embeddings(precision_bits)


class NonIntegralTraceError(DomainError):
    def __init__(self, index: int, value: Fraction):
        self.index = index
        self.value = value
        super().__init__(f"Tr(f*a^{index})/d = {value} is not an integer")


def _trace_window(field: NumberField, coords: Sequence[Fraction], n_max: int) -> list[Fraction]:
    """Tr(e * a^n) for n = 0..n_max where e has the given power-basis coordinates."""
    from .poly import power_traces

    s = power_traces(field.defining_poly, n_max + field.degree)
    return [sum((c * s[n + j] for j, c in enumerate(coords)), Fraction(0))
            for n in range(n_max + 1)]


def binet_coefficients(spec: RecurrenceSpec, certificate: PisotCertificate | None = None) -> BinetData:
    """Solve the trace-form system sum_j Tr(a^(n+j)) v_j = F_n for f1 = sum_j v_j a^j."""
    cert = certificate or _require_pisot(spec)
    field = NumberField(spec.char_poly, check=False)
    k = spec.k
    tr = field.traces
    gram = [[tr[n + j] for j in range(k)] for n in range(k)]
    v = solve(gram, spec.initial_values)
    f1 = NFElem(field, v)
    d = reduce(lcm, (c.denominator for c in f1.coords), 1)
    f = f1 * d
    window = max(2 * k, 20)
    got = _trace_window(field, f1.coords, window)
    want = eval_range(spec, 0, window)
    if got != want:
        raise InternalError("Binet coefficient fails the trace identity")
    return BinetData(spec, f1, d, f, cert)


def build_from_trace(pisot_poly: IntPoly, f_coords: Sequence[int], d: int) -> RecurrenceSpec:
    """The recurrence with d*F_n = Tr(f * a^n), where f has integer coordinates."""
    if d <= 0:
        raise DomainError("d must be a positive integer")
    if any(int(c) != c for c in f_coords):
        raise DomainError("f must have integer power-basis coordinates")
    if not any(f_coords):
        raise DomainError("f must be nonzero")
    cert = certify_pisot(pisot_poly)
    if not cert:
        raise DomainError(f"{pisot_poly} is not a Pisot polynomial: {cert.reason.value}")
    field = NumberField(pisot_poly, check=False)
    f = NFElem(field, f_coords)
    values = []
    for n, t in enumerate(_trace_window(field, f.coords, field.degree - 1)):
        q = t / d
        if q.denominator != 1:
            raise NonIntegralTraceError(n, q)
        values.append(q.numerator)
    return RecurrenceSpec(pisot_poly, tuple(values))


# ---------------------------------------------------------------------------
# numerical Binet data


def binet_enclosure(binet: BinetData, n: int, precision_bits: int = 256) -> ComplexBox:
    """Interval enclosure of sum_i f1^(i) a_i^n over all embeddings."""
    boxes = binet.field.root_boxes(precision_bits)
    coeffs = binet.conjugate_values(precision_bits)
    total = ComplexBox.point(0)
    for c, a in zip(coeffs, boxes):
        total = total + (c * a.power(n, precision_bits)).rounded(precision_bits)
    return total


@dataclass(frozen=True)
class Dominance:
    """Certified growth data: F_n = c1*a^n + tail with |tail| <= tail_bound."""

    c1: Interval
    alpha: Interval
    tail_bound: Fraction

    @property
    def sign(self) -> int:
        return 1 if self.c1.lo > 0 else -1

    def threshold(self, bound) -> int:
        """Smallest N with |c1| a^N - tail_bound > bound; then |F_n| > bound for n >= N."""
        mag = self.c1.mig()
        target = Fraction(bound) + self.tail_bound
        n, power = 0, Fraction(1)
        a = self.alpha.lo
        while mag * power <= target:
            power *= a
            n += 1
            if n % 64 == 0:
                power = Interval.point(power).rounded(256).lo
        return n


def dominance(binet: BinetData, precision_bits: int = 128) -> Dominance:
    """Enclose the dominant Binet coefficient and bound the conjugate tail."""
    bits = precision_bits
    while True:
        vals = binet.conjugate_values(bits)
        c1 = vals[0].re
        if c1.lo > 0 or c1.hi < 0:
            break
        bits *= 2
        if bits > 8192:
            raise InternalError("could not separate the dominant coefficient from zero")
    alpha = binet.field.root_boxes(bits)[0].re
    tail = sum((v.modulus_upper() for v in vals[1:]), Fraction(0))
    return Dominance(c1, alpha, tail)
