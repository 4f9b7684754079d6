"""Exact rational interval arithmetic and certified complex root isolation.

Root isolation works in two stages. Approximations come from companion
eigenvalues (numpy) polished by Aberth's simultaneous iteration at high
precision (mpmath). They are then *certified* with exact integer arithmetic:
by Smith's Gershgorin-type theorem, the disks

    |z - z_i| <= n * |p(z_i) / (lc(p) * prod_{j != i} (z_i - z_j))|

contain all roots, and a component made of m disks contains exactly m
roots. We require the square hulls of the disks to be pairwise disjoint,
which certifies one root per box.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath
import numpy as np

from .errors import DomainError
from .poly import RatPoly

__all__ = ["Interval", "ComplexBox", "isolate_roots"]


def _floor_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _ceil_dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


@dataclass(frozen=True)
class Interval:
    """Closed real interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @staticmethod
    def _lift(other):
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval.point(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Interval.point(1)
        for _ in range(e):
            out = out * self
        return out

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def mag(self) -> Fraction:
        """Upper bound of |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Fraction:
        """Lower bound of |x| over the interval."""
        if self.lo <= 0 <= self.hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def square(self) -> "Interval":
        return Interval(self.mig() ** 2, self.mag() ** 2)

    def rounded(self, bits: int) -> "Interval":
        """Outward rounding onto the dyadic grid 2^-bits."""
        return Interval(_floor_dyadic(self.lo, bits), _ceil_dyadic(self.hi, bits))


@dataclass(frozen=True)
class ComplexBox:
    """Axis-aligned rectangle in the complex plane; ``im_lo == im_hi == 0`` tags it real.

    Doubles as a rectangular complex interval: ``+``, ``-``, ``*`` and
    integer powers return boxes enclosing every possible result.
    """

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def __post_init__(self):
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValueError("malformed box")

    @classmethod
    def from_intervals(cls, re: Interval, im: Interval) -> "ComplexBox":
        return cls(re.lo, re.hi, im.lo, im.hi)

    @classmethod
    def point(cls, re, im=0) -> "ComplexBox":
        re, im = Fraction(re), Fraction(im)
        return cls(re, re, im, im)

    @property
    def re(self) -> Interval:
        return Interval(self.re_lo, self.re_hi)

    @property
    def im(self) -> Interval:
        return Interval(self.im_lo, self.im_hi)

    @property
    def is_real(self) -> bool:
        return self.im_lo == 0 and self.im_hi == 0

    @property
    def width(self) -> Fraction:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return ((self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2)

    def center_complex(self) -> complex:
        c = self.center
        return complex(float(c[0]), float(c[1]))

    def conjugate(self) -> "ComplexBox":
        return ComplexBox(self.re_lo, self.re_hi, -self.im_hi, -self.im_lo)

    def modulus_sq(self) -> Interval:
        return self.re.square() + self.im.square()

    def modulus_upper(self) -> Fraction:
        """Rational upper bound on |z| for z in the box."""
        return _sqrt_upper(self.modulus_sq().hi)

    def modulus_lower(self) -> Fraction:
        return _sqrt_lower(self.modulus_sq().lo)

    def modulus(self) -> Interval:
        return Interval(self.modulus_lower(), self.modulus_upper())

    def contains(self, z) -> bool:
        """Exact for rationals and (re, im) tuples; floats compare in double precision."""
        if isinstance(z, (int, Fraction)):
            z = (Fraction(z), Fraction(0))
        elif not isinstance(z, tuple):
            z = complex(z)
        if isinstance(z, complex):
            return (float(self.re_lo) <= z.real <= float(self.re_hi)
                    and float(self.im_lo) <= z.imag <= float(self.im_hi))
        re, im = z
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def disjoint(self, other: "ComplexBox") -> bool:
        return (self.re_hi < other.re_lo or other.re_hi < self.re_lo
                or self.im_hi < other.im_lo or other.im_hi < self.im_lo)

    # -- interval arithmetic ---------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, ComplexBox):
            return other
        if isinstance(other, (int, Fraction)):
            return ComplexBox.point(other)
        if isinstance(other, Interval):
            return ComplexBox(other.lo, other.hi, Fraction(0), Fraction(0))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexBox.from_intervals(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexBox(-self.re_hi, -self.re_lo, -self.im_hi, -self.im_lo)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_real and o.is_real:
            return ComplexBox.from_intervals(self.re * o.re, Interval.point(0))
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        return ComplexBox.from_intervals(re, im)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self.power(e)

    def power(self, e: int, bits: int | None = None) -> "ComplexBox":
        """Binary powering; with ``bits`` every step is rounded outward to 2^-bits."""
        out, base = ComplexBox.point(1), self
        while e:
            if e & 1:
                out = out * base
                if bits is not None:
                    out = out.rounded(bits)
            e >>= 1
            if e:
                base = base * base
                if bits is not None:
                    base = base.rounded(bits)
        return out

    def rounded(self, bits: int) -> "ComplexBox":
        return ComplexBox.from_intervals(self.re.rounded(bits), self.im.rounded(bits))

    def __str__(self):
        if self.is_real:
            return f"[{float(self.re_lo)!r}, {float(self.re_hi)!r}]"
        return (f"[{float(self.re_lo)!r}, {float(self.re_hi)!r}] + "
                f"[{float(self.im_lo)!r}, {float(self.im_hi)!r}]i")


def _sqrt_upper(x: Fraction, bits: int = 128) -> Fraction:
    if x <= 0:
        return Fraction(0)
    s = isqrt((x.numerator << (2 * bits)) // x.denominator) + 1
    return Fraction(s, 1 << bits)


def _sqrt_lower(x: Fraction, bits: int = 128) -> Fraction:
    if x <= 0:
        return Fraction(0)
    s = isqrt((x.numerator << (2 * bits)) // x.denominator)
    return Fraction(s, 1 << bits)


# ---------------------------------------------------------------------------
# approximation


def _aberth(coeffs_desc, approx, prec_bits, max_iter=500):
    """Polish all root approximations simultaneously (Aberth–Ehrlich)."""
    with mpmath.workprec(prec_bits + 20):
        cs = [mpmath.mpf(c) for c in coeffs_desc]
        z = [mpmath.mpc(a) for a in approx]
        n = len(z)
        tol = mpmath.ldexp(1, -prec_bits)
        for _ in range(max_iter):
            biggest = mpmath.mpf(0)
            for i in range(n):
                pv, dpv = mpmath.polyval(cs, z[i], derivative=True)
                if pv == 0:
                    continue
                ratio = pv / dpv if dpv != 0 else mpmath.mpc(tol)
                s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i
                                and z[i] != z[j])
                w = ratio / (1 - ratio * s)
                z[i] -= w
                biggest = max(biggest, abs(w) / max(1, abs(z[i])))
            if biggest < tol:
                break
        return z


def _initial(coeffs_desc):
    lc = float(coeffs_desc[0])
    try:
        r = np.roots(np.array([float(c) / lc for c in coeffs_desc], dtype=float))
        if np.all(np.isfinite(r)):
            out = [complex(x) for x in r]
            # Aberth needs pairwise distinct starting points
            seen = set()
            for i, x in enumerate(out):
                while x in seen:
                    x += complex(1e-7, 1e-7)
                seen.add(x)
                out[i] = x
            return out
    except (np.linalg.LinAlgError, OverflowError, ValueError):
        pass
    n = len(coeffs_desc) - 1
    radius = 1 + max(abs(Fraction(c) / Fraction(coeffs_desc[0])) for c in coeffs_desc[1:])
    import cmath

    return [float(radius) * cmath.exp(2j * cmath.pi * (k + 0.25) / n) for k in range(n)]


def _to_grid(x, bits: int) -> int:
    """Nearest integer to x * 2^bits for an mpf x."""
    return int(mpmath.nint(mpmath.ldexp(x, bits)))


def _symmetrize(z, bits):
    """Snap near-real approximations onto the axis and pair the rest conjugately.

    Returns integer grid centers (a, b) meaning (a + b i) / 2^bits, or None
    when the approximations do not pair up.
    """
    thresh = mpmath.ldexp(1, -(bits // 2))
    reals, upper, lower = [], [], []
    for x in z:
        if abs(x.imag) <= thresh * max(1, abs(x)):
            reals.append((_to_grid(x.real, bits), 0))
        elif x.imag > 0:
            upper.append((_to_grid(x.real, bits), _to_grid(x.imag, bits)))
        else:
            lower.append(x)
    if len(upper) != len(lower):
        return None
    centers = reals + upper + [(a, -b) for a, b in upper]
    if len(set(centers)) != len(centers):
        return None
    return centers


# ---------------------------------------------------------------------------
# certification


def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _certify(int_coeffs, centers, grid_bits, precision_bits):
    """Smith-disk certification on grid centers; returns boxes or None."""
    n = len(int_coeffs) - 1
    lc = int_coeffs[-1]
    radii_sq = []
    for i, zi in enumerate(centers):
        # P = 2^(grid*n) * p(z_i), exact Gaussian integer via Horner
        acc = (int_coeffs[-1], 0)
        for k in range(n - 1, -1, -1):
            acc = _cmul(acc, zi)
            acc = (acc[0] + (int_coeffs[k] << (grid_bits * (n - k))), acc[1])
        Q = (1, 0)
        for j, zj in enumerate(centers):
            if j != i:
                Q = _cmul(Q, (zi[0] - zj[0], zi[1] - zj[1]))
        qn = Q[0] ** 2 + Q[1] ** 2
        if qn == 0:
            return None
        pn = acc[0] ** 2 + acc[1] ** 2
        # r^2 = n^2 |P|^2 / (lc^2 |Q|^2 4^grid)
        radii_sq.append(Fraction(n * n * pn, lc * lc * qn * (1 << (2 * grid_bits))))
    s_bits = precision_bits + 8
    boxes = []
    half_target = Fraction(1, 1 << (precision_bits + 1))
    for (a, b), r2 in zip(centers, radii_sq):
        r = Fraction(isqrt((r2.numerator << (2 * s_bits)) // r2.denominator) + 1, 1 << s_bits)
        if r > half_target:
            return None
        cx = Fraction(a, 1 << grid_bits)
        cy = Fraction(b, 1 << grid_bits)
        boxes.append(ComplexBox(cx - r, cx + r, cy - r, cy + r))
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not boxes[i].disjoint(boxes[j]):
                return None
    out = []
    for (a, b), box in zip(centers, boxes):
        if b == 0:
            # an isolated disk symmetric about the axis holds a real root
            box = ComplexBox(box.re_lo, box.re_hi, Fraction(0), Fraction(0))
        out.append(box)
    return out


def isolate_roots(p: RatPoly, precision_bits: int = 64) -> list[ComplexBox]:
    """Certified isolating boxes for all complex roots of a squarefree ``p``.

    Returns ``deg p`` pairwise disjoint boxes of width at most
    ``2**-precision_bits``, each holding exactly one root. Real roots get
    real-tagged boxes, conjugate pairs get mirror-image boxes, and the list
    is sorted by (real, imaginary) part of the centers.
    """
    if precision_bits < 1:
        raise DomainError("precision_bits must be positive")
    if p.is_zero():
        raise DomainError("zero polynomial has no isolated roots")
    if p.degree <= 0:
        return []
    if not p.is_squarefree():
        raise DomainError("isolate_roots needs a squarefree polynomial")
    ip = p.primitive()
    cs = [int(c) for c in ip.coeffs]
    if ip.degree == 1:
        r = Fraction(-cs[0], cs[1])
        return [ComplexBox(r, r, Fraction(0), Fraction(0))]
    desc = list(reversed(cs))
    approx = _initial(desc)
    work = precision_bits + 32 + 4 * ip.degree
    for _ in range(12):
        z = _aberth(desc, approx, work)
        with mpmath.workprec(work + 20):
            centers = _symmetrize(z, work)
        if centers is not None:
            boxes = _certify(cs, centers, work, precision_bits)
            if boxes is not None:
                boxes.sort(key=lambda b: b.center)
                return boxes
        approx = z
        work *= 2
    raise DomainError("root isolation failed to certify (precision ceiling reached)")
