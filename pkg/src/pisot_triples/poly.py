"""Dense univariate polynomials over the integers and the rationals.

Coefficients are stored in ascending degree order. A polynomial whose
coefficients are all integers is an :class:`IntPoly`; anything else is a
:class:`RatPoly`. Arithmetic picks the right class automatically, so
``IntPoly`` is simply the integral case of ``RatPoly``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DomainError

__all__ = [
    "RatPoly",
    "IntPoly",
    "poly",
    "X",
    "resultant",
    "power_traces",
    "poly_gcd",
    "poly_xgcd",
    "squarefree_part",
    "parse_poly",
    "interpolate",
]


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class RatPoly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __new__(cls, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        target = IntPoly if all(isinstance(c, int) for c in cs) else RatPoly
        if cls is IntPoly and target is not IntPoly:
            raise DomainError("IntPoly requires integer coefficients")
        obj = object.__new__(target)
        object.__setattr__(obj, "coeffs", tuple(cs))
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    def __reduce__(self):
        return (RatPoly, (self.coeffs,))

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_integral(self) -> bool:
        return isinstance(self, IntPoly)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("poly", self.coeffs)))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r})"

    def __str__(self):
        return self.to_str()

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return RatPoly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return RatPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative exponent")
        result, base = RatPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "RatPoly"):
        """Quotient and remainder over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        d = other.degree
        lc = Fraction(other.lc)
        q = [Fraction(0)] * max(len(r) - d, 0)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i] / lc
            if c:
                q[i - d] = c
                for j in range(d + 1):
                    r[i - d + j] -= c * other.coeffs[j]
        return RatPoly(q), RatPoly(r[:d] if d > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DomainError(f"{other} does not divide {self}")
        return q

    # -- evaluation & transforms -----------------------------------------
    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element (numbers, NFElem, intervals)."""
        if not self.coeffs:
            return 0 * x
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self):
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self):
        if self.is_zero():
            raise DomainError("zero polynomial has no monic form")
        lc = Fraction(self.lc)
        return RatPoly(c / lc for c in self.coeffs)

    def content(self):
        """Rational content, sign chosen so the primitive part has positive lc."""
        if self.is_zero():
            return 0
        nums = reduce(gcd, (Fraction(c).numerator for c in self.coeffs))
        dens = reduce(lcm, (Fraction(c).denominator for c in self.coeffs))
        c = Fraction(nums, dens)
        return _norm(-c if self.lc < 0 else c)

    def primitive(self) -> "IntPoly":
        """Primitive integer polynomial with positive leading coefficient."""
        if self.is_zero():
            return self
        c = Fraction(self.content())
        return RatPoly(Fraction(x) / c for x in self.coeffs)

    def clear_denominators(self):
        """Return ``(d, d*self)`` with ``d*self`` integral and ``d`` the lcm of denominators."""
        d = reduce(lcm, (Fraction(c).denominator for c in self.coeffs), 1)
        return d, RatPoly(c * d for c in self.coeffs)

    def reverse(self):
        return RatPoly(reversed(self.coeffs))

    def scale_var(self, s):
        """p(s*x)."""
        return RatPoly(c * s**i for i, c in enumerate(self.coeffs))

    def compose_linear(self, a, b):
        """p(a*x + b)."""
        out = RatPoly()
        lin = RatPoly([b, a])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def is_squarefree(self) -> bool:
        return poly_gcd(self, self.derivative()).degree <= 0

    # -- printing ---------------------------------------------------------
    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if i == 0:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


class IntPoly(RatPoly):
    """A :class:`RatPoly` with integer coefficients."""

    __slots__ = ()


def poly(*coeffs) -> RatPoly:
    """``poly(c0, c1, ...)`` or ``poly([c0, c1, ...])``; ascending order."""
    if len(coeffs) == 1 and isinstance(coeffs[0], (list, tuple)):
        coeffs = coeffs[0]
    return RatPoly(coeffs)


X = RatPoly([0, 1])


# ---------------------------------------------------------------------------
# gcd, resultant, traces


def _prim_list(p: list[int]) -> list[int]:
    c = reduce(gcd, p)
    return [x // c for x in p] if c > 1 else p


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over the rationals (zero if both are zero).

    Primitive remainder sequence on integer coefficient lists, which avoids
    the coefficient swell of the rational Euclidean algorithm.
    """
    if a.is_zero():
        return b.monic() if not b.is_zero() else b
    if b.is_zero():
        return a.monic()
    A = _prim_list(list(a.clear_denominators()[1].coeffs))
    B = _prim_list(list(b.clear_denominators()[1].coeffs))
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _prem(A, B)
        A, B = B, (_prim_list(R) if R else R)
    return RatPoly(A).monic()


def poly_xgcd(a: RatPoly, b: RatPoly):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = RatPoly([1]), RatPoly()
    t0, t1 = RatPoly(), RatPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = Fraction(1) / Fraction(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p: RatPoly) -> RatPoly:
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g) if g.degree > 0 else p


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b on integer lists."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        f = lb**e
        r = [x * f for x in r]
    return r


def _int_resultant(A: list[int], B: list[int]) -> int:
    """Subresultant PRS resultant of primitive-or-not integer polynomials."""

    def cont(p):
        return reduce(gcd, p)

    a, b = cont(A), cont(B)
    A = [x // a for x in A]
    B = [x // b for x in B]
    dA, dB = len(A) - 1, len(B) - 1
    t = a**dB * b**dA
    s = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 and dB % 2:
            s = -1
    g, h = 1, Fraction(1)
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _prem(A, B)
        if not R:
            return 0
        div = g * h**delta
        A = B
        B = [Fraction(x) / div for x in R]
        if any(x.denominator != 1 for x in B):
            raise AssertionError("subresultant division not exact")
        B = [x.numerator for x in B]
        g = A[-1]
        h = h ** (1 - delta) * Fraction(g) ** delta
        if len(B) - 1 == 0:
            dA = len(A) - 1
            h = h ** (1 - dA) * Fraction(B[-1]) ** dA
            res = s * t * h
            assert res.denominator == 1
            return res.numerator


def resultant(p: RatPoly, q: RatPoly):
    """Res(p, q) = lc(p)^deg(q) * prod q(a) over the roots a of p.

    Computed exactly by the subresultant PRS after clearing denominators.
    """
    if p.is_zero() or q.is_zero():
        raise DomainError("resultant of the zero polynomial")
    dp, dq = p.degree, q.degree
    if dp == 0:
        return _norm(Fraction(p.lc) ** dq)
    if dq == 0:
        return _norm(Fraction(q.lc) ** dp)
    cp, P = p.clear_denominators()
    cq, Q = q.clear_denominators()
    r = _int_resultant(list(P.coeffs), list(Q.coeffs))
    return _norm(Fraction(r, cp**dq * cq**dp))


def power_traces(p: RatPoly, m: int) -> list[int]:
    """Power sums ``[s_0, ..., s_m]`` of the roots of a monic integer polynomial.

    Newton's identities, all in exact integer arithmetic.
    """
    if not isinstance(p, IntPoly) or not p.is_monic():
        raise DomainError("power_traces needs a monic integer polynomial")
    if m < 0:
        raise DomainError("m must be nonnegative")
    k = p.degree
    c = p.coeffs
    s = [k]
    for n in range(1, m + 1):
        acc = -n * c[k - n] if n <= k else 0
        for i in range(1, min(n - 1, k) + 1):
            acc -= c[k - i] * s[n - i]
        s.append(acc)
    return s


def interpolate(xs: Sequence, ys: Sequence) -> RatPoly:
    """Exact Newton interpolation through ``(xs[i], ys[i])``."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = RatPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * RatPoly([-xs[i], 1]) + coef[i]
    return out


# ---------------------------------------------------------------------------
# parsing

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<var>[a-zA-Z])?
        (?:\s*(?:\^|\*\*)\s*(?P<exp>\d+))?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> RatPoly:
    """Parse ``"x^3 - x - 1"``-style input (also accepts ``**`` and ``2x``).

    Raises :class:`DomainError` naming the first token that cannot be read.
    """
    s = text.strip()
    if not s:
        raise DomainError("empty polynomial")
    pos = 0
    var = None
    terms: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("var") is None):
            tok = s[pos:].split()[0] if s[pos:].split() else s[pos:]
            raise DomainError(f"cannot parse polynomial near token {tok!r}")
        if not first and m.group("sign") is None:
            raise DomainError(f"missing operator before {m.group(0).strip()!r}")
        v = m.group("var")
        if v is not None:
            if var is None:
                var = v
            elif v != var:
                raise DomainError(f"unexpected variable {v!r} (expected {var!r})")
        if m.group("exp") is not None and v is None:
            raise DomainError(f"exponent without variable near {m.group(0).strip()!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        e = 0 if v is None else int(m.group("exp") or 1)
        terms[e] = terms.get(e, Fraction(0)) + coef
        pos = m.end()
        first = False
    deg = max(terms)
    return RatPoly(terms.get(i, 0) for i in range(deg + 1))
