"""Arithmetic in simple number fields Q(a) = Q[x]/(m(x)).

Elements are dense power-basis coordinate vectors over the rationals.
Beyond the field operations this module provides traces, norms, minimal
polynomials, square roots (Trager's shift-and-factor method), factoring of
polynomials over the field, and splitting-field construction by repeated
adjunction of roots with primitive-element recombination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from functools import reduce
from math import factorial, isqrt, lcm
from typing import Sequence

from sympy import isprime, nextprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf

from .cancel import check
from .errors import CapExceeded, DomainError, FieldMismatchError, InternalError
from .factor import factor_over_rationals, is_irreducible
from .linalg import solve
from .poly import IntPoly, RatPoly, interpolate, power_traces, resultant, poly_xgcd
from .roots import ComplexBox, isolate_roots

__all__ = [
    "NumberField",
    "NFElem",
    "SplittingField",
    "nf_arithmetic",
    "nf_trace_norm",
    "nf_minpoly",
    "nf_sqrt",
    "factor_over_field",
    "build_splitting_field",
    "galois_order_lower_bound",
    "discriminant",
    "DEFAULT_DEGREE_CAP",
]

DEFAULT_DEGREE_CAP = 64


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class NumberField:
    """Q(a) for a monic irreducible integer polynomial.

    ``check=False`` skips the irreducibility test; use it only for
    polynomials that are irreducible by construction.
    """

    def __init__(self, defining_poly: RatPoly, check: bool = True):
        if not isinstance(defining_poly, IntPoly) or not defining_poly.is_monic():
            raise DomainError("defining polynomial must be monic with integer coefficients")
        if defining_poly.degree < 1:
            raise DomainError("defining polynomial must have positive degree")
        if check and not is_irreducible(defining_poly):
            raise DomainError(f"defining polynomial {defining_poly} is reducible")
        self.defining_poly = defining_poly
        self.degree = defining_poly.degree
        k = self.degree
        m = [Fraction(c) for c in defining_poly.coeffs]
        # red[j] = coordinates of a^(k+j)
        red = []
        cur = [-m[i] for i in range(k)]
        for _ in range(max(k - 1, 0)):
            red.append(cur)
            top = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            cur = [nxt[i] - top * m[i] for i in range(k)]
        self._red = red
        self._red_int = [[int(c) for c in row] for row in red]
        self._box_cache: dict[int, list[ComplexBox]] = {}

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.defining_poly == self.defining_poly

    def __hash__(self):
        return hash(("NumberField", self.defining_poly))

    def __repr__(self):
        return f"NumberField({self.defining_poly})"

    @cached_property
    def traces(self) -> list[int]:
        """Tr(a^j) for j = 0 .. 2k-2."""
        return power_traces(self.defining_poly, 2 * self.degree - 2)

    # -- element construction --------------------------------------------
    def __call__(self, value) -> "NFElem":
        if isinstance(value, NFElem):
            if value.field != self:
                raise FieldMismatchError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            return NFElem(self, [value])
        if isinstance(value, RatPoly):
            return NFElem.from_poly(self, value)
        return NFElem(self, value)

    def gen(self) -> "NFElem":
        return NFElem(self, [0, 1]) if self.degree > 1 else NFElem(self, [-self.defining_poly[0]])

    def zero(self) -> "NFElem":
        return NFElem(self, [])

    def one(self) -> "NFElem":
        return NFElem(self, [1])

    # -- embeddings -------------------------------------------------------
    def root_boxes(self, precision_bits: int = 64) -> list[ComplexBox]:
        """Isolating boxes for the embeddings.

        When one real root strictly dominates all others in modulus (the
        Pisot situation) it is listed first; the rest keep the
        (real, imaginary) ordering.
        """
        if precision_bits not in self._box_cache:
            boxes = isolate_roots(self.defining_poly, precision_bits)
            dom = None
            for i, b in enumerate(boxes):
                if b.is_real and all(
                    b.modulus_lower() > o.modulus_upper() for j, o in enumerate(boxes) if j != i
                ):
                    dom = i
            if dom is not None:
                boxes = [boxes[dom]] + boxes[:dom] + boxes[dom + 1:]
            self._box_cache[precision_bits] = boxes
        return self._box_cache[precision_bits]

    def _reduce(self, prod: list[Fraction]) -> tuple[Fraction, ...]:
        k = self.degree
        out = list(prod[:k]) + [Fraction(0)] * max(0, k - len(prod))
        for j, c in enumerate(prod[k:]):
            if c:
                r = self._red[j]
                for i in range(k):
                    out[i] += c * r[i]
        return tuple(out)

    def _mul_coords(self, a, b) -> list[Fraction]:
        """Product of two coordinate vectors; integer arithmetic on numerators."""
        da = reduce(lcm, (c.denominator for c in a), 1)
        db = reduce(lcm, (c.denominator for c in b), 1)
        na = [c.numerator * (da // c.denominator) for c in a]
        nb = [c.numerator * (db // c.denominator) for c in b]
        k = self.degree
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(na):
            if x:
                for j, y in enumerate(nb):
                    if y:
                        prod[i + j] += x * y
        out = prod[:k]
        for j, c in enumerate(prod[k:]):
            if c:
                r = self._red_int[j]
                for i in range(k):
                    out[i] += c * r[i]
        den = da * db
        return [Fraction(x, den) for x in out]


class NFElem:
    """Immutable element of a :class:`NumberField` in power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Sequence = ()):
        k = field.degree
        cs = [_frac(c) for c in coords]
        if len(cs) > k:
            cs = list(field._reduce(cs))
        cs += [Fraction(0)] * (k - len(cs))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("NFElem is immutable")

    def __reduce__(self):
        return (NFElem, (self.field, self.coords))

    @classmethod
    def from_poly(cls, field: NumberField, p: RatPoly) -> "NFElem":
        r = p % RatPoly(field.defining_poly.coeffs) if p.degree >= field.degree else p
        return cls(field, r.coeffs)

    def as_poly(self) -> RatPoly:
        return RatPoly(self.coords)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def has_integer_coords(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return f"NFElem({self.as_poly().to_str('a')})"

    def __str__(self):
        return self.as_poly().to_str("a")

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> "NFElem | None":
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise FieldMismatchError("operands live in different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, [a * other for a in self.coords])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, self.field._mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.is_rational():
            return NFElem(self.field, [1 / self.coords[0]])
        g, s, _ = poly_xgcd(self.as_poly(), RatPoly(self.field.defining_poly.coeffs))
        if g.degree != 0:
            raise InternalError("defining polynomial is not irreducible")
        return NFElem.from_poly(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return NFElem(self.field, [a / other for a in self.coords])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.field.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- invariants -------------------------------------------------------
    def trace(self) -> Fraction:
        tr = self.field.traces
        return sum((c * tr[j] for j, c in enumerate(self.coords)), Fraction(0))

    def norm(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if self.is_rational():
            return self.coords[0] ** self.field.degree
        return Fraction(resultant(RatPoly(self.field.defining_poly.coeffs), self.as_poly()))

    def charpoly(self) -> RatPoly:
        """prod (t - a_i) over the embeddings, by interpolating norms of t - self."""
        k = self.field.degree
        xs = list(range(k + 1))
        ys = [(self.field(x) - self).norm() for x in xs]
        return interpolate(xs, ys)

    def minpoly(self) -> RatPoly:
        if self.is_rational():
            return RatPoly([-self.coords[0], 1])
        cp = self.charpoly()
        # charpoly = minpoly^(k/d); the irreducible factor is the minimal polynomial
        facs = factor_over_rationals(cp)
        if len(facs) != 1:
            raise InternalError("characteristic polynomial is not a prime power")
        return facs[0][0].monic()

    def embedding(self, index: int, precision_bits: int = 128) -> ComplexBox:
        """Enclosure of this element under the embedding sending a to root box ``index``."""
        box = self.field.root_boxes(precision_bits)[index]
        val = self.as_poly()(box)
        return val if isinstance(val, ComplexBox) else ComplexBox.point(val)

    def embeddings(self, precision_bits: int = 128) -> list[ComplexBox]:
        return [self.embedding(i, precision_bits) for i in range(self.field.degree)]

    def canonical_sign(self) -> "NFElem":
        """Sign-normalize so the highest-degree nonzero coordinate is positive."""
        for c in reversed(self.coords):
            if c:
                return self if c > 0 else -self
        return self

    def lift(self, image_of_gen: "NFElem") -> "NFElem":
        """Image under the embedding of fields sending our generator to ``image_of_gen``."""
        return self.as_poly()(image_of_gen) + image_of_gen.field.zero()


# ---------------------------------------------------------------------------
# public operations


def nf_arithmetic(a: NFElem, b: NFElem, op: str) -> NFElem:
    if a.field != b.field:
        raise FieldMismatchError("operands live in different number fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise DomainError(f"unknown operation {op!r}")


def nf_trace_norm(a: NFElem) -> tuple[Fraction, Fraction]:
    return a.trace(), a.norm()


def nf_minpoly(a: NFElem) -> RatPoly:
    return a.minpoly()


# ---------------------------------------------------------------------------
# polynomials with coefficients in a number field (ascending lists of NFElem)


def _ktrim(p: list[NFElem]) -> list[NFElem]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _kmonic(p: list[NFElem]) -> list[NFElem]:
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _kdivmod(a: list[NFElem], b: list[NFElem]):
    b = _ktrim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = _ktrim(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    field = b[0].field
    q = [field.zero()] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        c = r[-1] * inv
        shift = len(r) - 1 - db
        q[shift] = c
        for j in range(db + 1):
            r[shift + j] = r[shift + j] - c * b[j]
        r = _ktrim(r)
    return q, r


def _kgcd(a: list[NFElem], b: list[NFElem]) -> list[NFElem]:
    a, b = _ktrim(a), _ktrim(b)
    while b:
        a, b = b, _kdivmod(a, b)[1]
    return _kmonic(a) if a else a


def _keval(p: list[NFElem], x):
    acc = p[-1] * 1
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def _kcompose_shift(p: list[NFElem], shift: NFElem) -> list[NFElem]:
    """p(t - shift) as a polynomial in t."""
    field = shift.field
    out: list[NFElem] = []
    for c in reversed(p):
        # out = out * (t - shift) + c
        new = [field.zero()] * (len(out) + 1)
        for i, oc in enumerate(out):
            new[i + 1] = new[i + 1] + oc
            new[i] = new[i] - oc * shift
        new[0] = new[0] + c
        out = new
    return _ktrim(out)


def _norm_poly(p: list[NFElem]) -> RatPoly:
    """Norm_{K/Q} of a K[t] polynomial, by exact interpolation."""
    field = p[0].field
    deg = (len(p) - 1) * field.degree
    xs = list(range(-(deg // 2), deg - deg // 2 + 1))
    ys = [_keval(p, field(x)).norm() for x in xs]
    return interpolate(xs, ys)


def _shifts():
    yield 0
    s = 1
    while True:
        yield s
        yield -s
        s += 1


def _trager(p: list[NFElem], token=None, max_shift: int = 200):
    """Factor a squarefree K[t] polynomial.

    Returns ``(s, [(factor, shifted_factor, norm_factor), ...])`` where
    ``shifted_factor(t) = factor(t - s*a)`` and ``norm_factor`` is its norm,
    an irreducible rational polynomial.
    """
    p = _ktrim(p)
    field = p[0].field
    gen = field.gen()
    for count, s in enumerate(_shifts()):
        if count > max_shift:
            raise InternalError("no squarefree norm found; input is not squarefree")
        check(token)
        ps = _kcompose_shift(p, gen * s) if s else p
        N = _norm_poly(ps)
        if not N.is_squarefree():
            continue
        out = []
        for h, _ in factor_over_rationals(N):
            hk = [field(c) for c in h.coeffs]
            g = _kgcd(ps, hk)
            if len(g) < 2:
                continue
            fac = _kcompose_shift(g, -(gen * s)) if s else g
            out.append((fac, g, h))
        out.sort(key=lambda t: (len(t[0]), [c.coords for c in t[0]]))
        return s, out
    raise InternalError("unreachable")


def factor_over_field(field: NumberField, p: Sequence, token=None) -> list[list[NFElem]]:
    """Monic irreducible factors over ``field`` of a squarefree polynomial.

    ``p`` is an ascending coefficient list (NFElem or rationals).
    """
    coeffs = _ktrim([field(c) for c in p])
    if len(coeffs) < 2:
        return []
    _, facs = _trager(coeffs, token)
    return [f for f, _, _ in facs]


def nf_sqrt(a: NFElem) -> NFElem | None:
    """Square root of ``a`` inside its own field, or ``None``.

    ``None`` means ``t^2 - a`` has no root in this field; it says nothing
    about larger fields. The returned root has a positive highest-degree
    nonzero coordinate.
    """
    field = a.field
    if a.is_zero():
        return field.zero()
    if a.is_rational():
        q = a.coords[0]
        if q > 0:
            rn, rd = isqrt(q.numerator), isqrt(q.denominator)
            if rn * rn == q.numerator and rd * rd == q.denominator:
                return field(Fraction(rn, rd))
    if field.degree == 1:
        return None
    s, facs = _trager([-a, field.zero(), field.one()])
    for fac, _, _ in facs:
        if len(fac) == 2:
            w = -fac[0] / fac[1]
            if w * w != a:
                raise InternalError("square root failed verification")
            return w.canonical_sign()
    return None


# ---------------------------------------------------------------------------
# splitting fields


@dataclass(frozen=True)
class SplittingField:
    """Galois closure of Q(a) for an irreducible polynomial ``base_poly``.

    ``root_images[0]`` is the image of the base generator a; the remaining
    roots follow in the order they were adjoined or split off.
    """

    base_poly: IntPoly
    primitive_poly: IntPoly
    degree: int
    root_images: tuple

    @property
    def field(self) -> NumberField:
        return self.root_images[0].field

    def embed(self, e: NFElem) -> NFElem:
        """Map an element of Q(a) into the splitting field."""
        if e.field.defining_poly != self.base_poly:
            raise FieldMismatchError("element is not from the base field")
        return e.lift(self.root_images[0])


def _adjoin(field: NumberField, q: list[NFElem], h: IntPoly, s: int):
    """Adjoin a root b of the monic K-irreducible ``q``.

    The new field is Q(t) with t = b + s*g (g the generator of K) and
    defining polynomial ``h``. Powers of t are written in the tower basis
    g^i b^j; one exact linear solve then expresses g in powers of t.
    Returns (L, image of g, image of b).
    """
    d, k = len(q) - 1, field.degree
    n = d * k
    if h.degree != n or k < 2:
        raise InternalError("unexpected degrees in root adjunction")
    shift = field.gen() * s
    zero = field.zero()
    cur = [field.one()] + [zero] * (d - 1)
    cols = []
    for _ in range(n):
        cols.append([c for e in cur for c in e.coords])
        nxt = [c * shift for c in cur] + [zero]
        for j in range(d):
            nxt[j + 1] = nxt[j + 1] + cur[j]
        top = nxt[d]
        if not top.is_zero():
            for j in range(d):
                nxt[j] = nxt[j] - top * q[j]
        cur = nxt[:d]
    target = [0] * n
    target[1] = 1
    rows = [[cols[e][r] for e in range(n)] for r in range(n)]
    L = NumberField(h, check=False)
    gamma = NFElem(L, solve(rows, target))
    beta = L.gen() - gamma * s
    if not field.defining_poly(gamma).is_zero():
        raise InternalError("generator image is not a root of the base polynomial")
    if not _keval([c.lift(gamma) for c in q], beta).is_zero():
        raise InternalError("adjoined root does not satisfy its polynomial")
    return L, gamma, beta


def _cycle_lcm(t):
    return reduce(lcm, t, 1)


def galois_order_lower_bound(p: IntPoly, n_primes: int = 60) -> int:
    """Exact lower bound on the order of the Galois group of an irreducible ``p``.

    Factoring ``p`` modulo unramified primes exhibits cycle types of
    Frobenius elements (Dedekind). The group order is divisible by the
    degree and by every observed element order, and is even unless the
    discriminant is a square. When a k-cycle, a (k-1)-cycle and a
    transposition all occur the group is the full symmetric group.
    """
    k = p.degree
    if k <= 2:
        return k
    disc = discriminant(p)
    bad = abs(disc * p.lc)
    types = set()
    prime = 2
    seen = 0
    while seen < n_primes:
        if bad % prime:
            f = [c % prime for c in reversed(p.coeffs)]
            _, facs = gf_factor_sqf(f, prime, ZZ)
            types.add(tuple(sorted(len(g) - 1 for g in facs)))
            seen += 1
        prime = int(nextprime(prime))
    has_k = (k,) in types
    has_k1 = (1, k - 1) in types
    has_tr = tuple([1] * (k - 2) + [2]) in types
    if has_k and has_tr and (has_k1 or isprime(k)):
        return factorial(k)
    bound = reduce(lcm, (_cycle_lcm(t) for t in types), k)
    r = isqrt(abs(disc))
    if (disc < 0 or r * r != disc) and bound % 2:
        bound *= 2
    return bound


def discriminant(p: RatPoly):
    """disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p)."""
    n = p.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return _normq(sign * Fraction(resultant(p, p.derivative())) / Fraction(p.lc))


def _normq(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def build_splitting_field(p: RatPoly, degree_cap: int = DEFAULT_DEGREE_CAP,
                          token=None) -> SplittingField:
    """Splitting field of a monic irreducible integer polynomial.

    Roots are adjoined one irreducible factor at a time; each new field is
    presented by a primitive element a_new = root + s*a_old whose norm
    polynomial is squarefree (s = 0, 1, -1, 2, ...). Exceeding
    ``degree_cap`` raises :class:`CapExceeded` carrying the degree reached.
    """
    if not isinstance(p, IntPoly) or not p.is_monic():
        raise DomainError("splitting field needs a monic integer polynomial")
    if not is_irreducible(p):
        raise DomainError(f"{p} is reducible")
    if degree_cap < p.degree:
        raise CapExceeded(degree_cap, 1, p.degree)
    lower = galois_order_lower_bound(p)
    if lower > degree_cap:
        raise CapExceeded(degree_cap, p.degree, lower)
    K = NumberField(p, check=False)
    gamma = K.gen()
    roots = [gamma]
    rem, r = _kdivmod([K(c) for c in p.coeffs], [-gamma, K.one()])
    if r:
        raise InternalError("generator is not a root of its polynomial")
    pending = [rem] if len(rem) > 1 else []
    while pending:
        check(token)
        linear, nonlinear = [], []
        for f in pending:
            if len(f) == 2:
                linear.append(f)
                continue
            s, facs = _trager(f, token)
            for fac, shifted, h in facs:
                (linear if len(fac) == 2 else nonlinear).append((fac, shifted, h, s))
        for f in linear:
            f = f[0] if isinstance(f, tuple) else f
            roots.append(-f[0] / f[1])
        if not nonlinear:
            break
        nonlinear.sort(key=lambda t: (len(t[0]), [c.coords for c in t[0]]))
        q, shifted, h, s = nonlinear[0]
        needed = h.degree
        if needed > degree_cap:
            raise CapExceeded(degree_cap, K.degree, needed)
        L, gamma_L, beta = _adjoin(K, q, h, s)
        roots = [r_.lift(gamma_L) for r_ in roots] + [beta]
        pending = []
        for i, (f, _, _, _) in enumerate(nonlinear):
            fl = [c.lift(gamma_L) for c in f]
            if i == 0:
                fl, rr = _kdivmod(fl, [-beta, L.one()])
                if rr:
                    raise InternalError("adjoined root does not divide its factor")
            if len(fl) > 1:
                pending.append(fl)
        K = L
    sf = SplittingField(p, K.defining_poly, K.degree, tuple(roots))
    for r_ in sf.root_images:
        if not p(r_).is_zero():
            raise InternalError("splitting-field root image fails the polynomial")
    return sf

