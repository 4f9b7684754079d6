"""Bounded searches for Diophantine triples inside a recurrence, the gcd scan,
and the classical quadruple constructions.

A triple a < b < c lies in the sequence when ab+1, ac+1 and bc+1 are all
values F_x, F_y, F_z. The search inverts the largest product: every
candidate bc = F_z - 1 is factored and split into divisor pairs.
"""
from __future__ import annotations

import math
import random
import time
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

import mpmath

from .cancel import check
from .errors import BudgetExceeded, Cancelled, DomainError, InternalError
from .recurrence import (
    RecurrenceSpec,
    _require_pisot,
    binet_coefficients,
    dominance,
    eval_range,
)

__all__ = [
    "MembershipIndex",
    "build_index",
    "Factorization",
    "factorize",
    "is_probable_prime",
    "divisors",
    "TripleHit",
    "find_triples",
    "GcdRecord",
    "GcdScanReport",
    "gcd_scan",
    "euler_quadruple",
    "dplus_extension",
    "is_diophantine_tuple",
    "DEFAULT_BUDGET_MS",
]

DEFAULT_BUDGET_MS = 5000


# ---------------------------------------------------------------------------
# membership index


@dataclass(frozen=True)
class MembershipIndex:
    """All sequence values in [0, value_bound] with every index attaining them.

    ``max_index`` is the last index examined; beyond it the dominant Binet
    term forces |F_n| > value_bound.
    """

    spec: RecurrenceSpec
    value_bound: int
    entries: dict
    max_index: int

    def __contains__(self, v) -> bool:
        return v in self.entries

    def indices(self, v) -> tuple[int, ...]:
        return self.entries.get(v, ())

    @property
    def values(self) -> list[int]:
        return list(self.entries)


def build_index(spec: RecurrenceSpec, value_bound: int) -> MembershipIndex:
    """Index F_n in [0, value_bound] up to the certified growth threshold."""
    if value_bound < 1:
        raise DomainError("value_bound must be at least 1")
    cert = _require_pisot(spec)
    dom = dominance(binet_coefficients(spec, cert))
    n_stop = max(dom.threshold(value_bound), spec.k)
    values = eval_range(spec, 0, n_stop - 1)
    # past the threshold |F_n| > bound with the sign of c1; double-check the edge
    edge = eval_range(spec, n_stop, n_stop + spec.k)
    if any(abs(v) <= value_bound for v in edge):
        raise InternalError("dominance threshold contradicted by direct evaluation")
    entries: dict[int, list[int]] = {}
    for n, v in enumerate(values):
        if 0 <= v <= value_bound:
            entries.setdefault(v, []).append(n)
    ordered = {v: tuple(entries[v]) for v in sorted(entries)}
    return MembershipIndex(spec, value_bound, ordered, n_stop - 1)


# ---------------------------------------------------------------------------
# factorization

# Miller-Rabin with the first 13 primes is deterministic below this bound
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_PROBABILISTIC_ROUNDS = 64
_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % q for q in range(2, isqrt(p) + 1))]


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> tuple[bool, bool]:
    """(is_prime, certain). ``certain`` is False only above the deterministic bound."""
    if n < 2:
        return False, True
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p, True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES), True
    rng = random.Random(n)
    bases = _MR_BASES + tuple(rng.randrange(2, n - 1) for _ in range(_PROBABILISTIC_ROUNDS))
    return all(_mr_round(n, d, s, a) for a in bases), False


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]
    probabilistic: bool = False

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p ** e
        return out

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def _brent(n: int, deadline: float, seed: int) -> int | None:
    """A nontrivial factor of composite odd n, or None past the deadline."""
    rng = random.Random(seed)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                if time.monotonic() > deadline:
                    return None
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, budget_ms: int = DEFAULT_BUDGET_MS) -> Factorization:
    """Prime factorization by trial division then Pollard-Brent.

    Raises :class:`BudgetExceeded` carrying the primes found so far and the
    unfactored cofactor when ``budget_ms`` runs out.
    """
    if n < 1:
        raise DomainError("factorize needs n >= 1")
    deadline = time.monotonic() + budget_ms / 1000
    found: dict[int, int] = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    probabilistic = False
    stack = [m] if m > 1 else []
    pending = []
    while stack:
        q = stack.pop()
        prime, certain = is_probable_prime(q)
        if prime:
            found[q] = found.get(q, 0) + 1
            probabilistic |= not certain
            continue
        r = isqrt(q)
        if r * r == q:
            stack += [r, r]
            continue
        f = _brent(q, deadline, seed=q)
        if f is None:
            pending.append(q)
            pending.extend(stack)
            cof = math.prod(pending)
            partial = tuple(sorted(found.items()))
            raise BudgetExceeded(n, partial, cof, budget_ms)
        stack += [f, q // f]
    return Factorization(n, tuple(sorted(found.items())), probabilistic)


def divisors(fac: Factorization) -> list[int]:
    ds = [1]
    for p, e in fac.factors:
        ds = [d * p ** i for d in ds for i in range(e + 1)]
    return sorted(ds)


# ---------------------------------------------------------------------------
# triple search


@dataclass(frozen=True)
class TripleHit:
    """a < b < c with ab+1 = F_x, ac+1 = F_y, bc+1 = F_z.

    ``x``, ``y``, ``z`` list every index attaining the respective value.
    """

    a: int
    b: int
    c: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]
    values: tuple[int, int, int] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if not 1 <= a < b < c:
            raise InternalError(f"triple ({a}, {b}, {c}) is not increasing")
        if self.values and self.values != (a * b + 1, a * c + 1, b * c + 1):
            raise InternalError(f"triple ({a}, {b}, {c}) fails re-verification")
        if not (self.x and self.y and self.z):
            raise InternalError(f"triple ({a}, {b}, {c}) missing witness indices")

    @property
    def has_increasing_witness(self) -> bool:
        """Whether some choice of witnesses satisfies x < y < z."""
        return any(x < y < z for x, y, z in product(self.x, self.y, self.z))

    def as_tuple(self):
        return (self.a, self.b, self.c)


def _verified_hit(spec: RecurrenceSpec, idx: MembershipIndex, a, b, c) -> TripleHit:
    vals = (a * b + 1, a * c + 1, b * c + 1)
    wit = [idx.indices(v) for v in vals]
    # witnesses are recomputed from the recurrence, not trusted from the index
    top = max(max(w) for w in wit)
    seq = eval_range(spec, 0, top)
    for v, ns in zip(vals, wit):
        if any(seq[n] != v for n in ns):
            raise InternalError(f"index disagrees with the recurrence at value {v}")
    return TripleHit(a, b, c, *wit, values=vals)


def _scan_values(spec, idx, zvals, c_max, a_min, budget_ms):
    """Hits for each bc+1 value in ``zvals``; stops at the first budget failure."""
    small = [v for v in idx.values if v >= 2]
    out = []
    for fz in zvals:
        v = fz - 1
        try:
            fac = factorize(v, budget_ms)
        except BudgetExceeded as exc:
            return out, (fz, exc)
        hits = []
        for b in divisors(fac):
            c = v // b
            if b >= c:
                break
            if c > c_max or b < 2:
                continue
            # ab + 1 = F_x with a_min <= a < b
            hi = bisect_right(small, b * (b - 1) + 1)
            for fx in small[:hi]:
                w = fx - 1
                if w % b:
                    continue
                a = w // b
                if a_min <= a < b and (a * c + 1) in idx:
                    hits.append(_verified_hit(spec, idx, a, b, c))
        out.append((fz, hits))
    return out, None


def find_triples(spec: RecurrenceSpec, c_max: int, a_min: int = 1, workers: int = 1,
                 budget_ms: int = DEFAULT_BUDGET_MS, token=None) -> list[TripleHit]:
    """Every triple a_min <= a < b < c <= c_max with ab+1, ac+1, bc+1 in the sequence.

    Sorted by (c, b, a). ``workers > 1`` splits the candidate values over a
    process pool; the merge is deterministic. A factorization that exceeds
    ``budget_ms`` aborts with :class:`BudgetExceeded` whose ``z`` names the
    offending index and ``checkpoint`` the last fully processed index; a
    cancelled serial run attaches the same ``checkpoint`` to :class:`Cancelled`.
    """
    if c_max < 3:
        raise DomainError("c_max must be at least 3")
    if a_min not in (1, 2):
        raise DomainError("a_min must be 1 or 2")
    idx = build_index(spec, c_max * (c_max - 1) + 1)
    zvals = [v for v in idx.values if v >= 3]
    if workers <= 1:
        results, failure = [], None
        for fz in zvals:
            try:
                check(token)
            except Cancelled as exc:
                done = [r[0] for r in results]
                exc.checkpoint = idx.indices(max(done))[-1] if done else None
                raise
            res, failure = _scan_values(spec, idx, [fz], c_max, a_min, budget_ms)
            results += res
            if failure:
                break
    else:
        chunks = [zvals[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_scan_values, spec, idx, ch, c_max, a_min, budget_ms)
                    for ch in chunks if ch]
            parts = [f.result() for f in futs]
        results = sorted((r for res, _ in parts for r in res), key=lambda t: t[0])
        fails = sorted((f for _, f in parts if f), key=lambda t: t[0])
        failure = fails[0] if fails else None
        if failure:
            results = [r for r in results if r[0] < failure[0]]
    if failure:
        fz, exc = failure
        exc.z = idx.indices(fz)[0]
        done = [r[0] for r in results]
        exc.checkpoint = idx.indices(max(done))[-1] if done else None
        raise exc
    hits = {h.as_tuple(): h for _, hs in results for h in hs}
    return [hits[t] for t in sorted(hits, key=lambda t: (t[2], t[1], t[0]))]


# ---------------------------------------------------------------------------
# gcd scan


@dataclass(frozen=True)
class GcdRecord:
    y: int
    z: int
    g: int
    ratio: mpmath.mpf


@dataclass(frozen=True)
class GcdScanReport:
    """gcd(F_y - 1, F_z - 1) against the exponent k/(k+1) of the dominant root.

    ``ratio = ln g / (z ln a)``; ``fitted_slack`` is the largest
    ``ln g - kappa z ln a``, an empirical value for the constant.
    """

    spec: RecurrenceSpec
    y_lo: int
    z_hi: int
    records: tuple[GcdRecord, ...]
    max_ratio: mpmath.mpf
    fitted_slack: mpmath.mpf
    kappa: Fraction
    log_alpha: mpmath.mpf
    precision_bits: int


def _gcd_rows(ys, z_hi, shifted, log_alpha, kappa, prec):
    with mpmath.workprec(prec):
        la = mpmath.mpf(log_alpha)
        kap = mpmath.mpf(kappa.numerator) / kappa.denominator
        recs, best, slack = [], mpmath.mpf(0), None
        for y in ys:
            for z in range(y + 1, z_hi + 1):
                g = gcd(shifted[y], shifted[z])
                lg = mpmath.log(g)
                r = lg / (z * la)
                s = lg - kap * z * la
                recs.append(GcdRecord(y, z, g, r))
                best = max(best, r)
                slack = s if slack is None else max(slack, s)
    return recs, best, slack


def gcd_scan(spec: RecurrenceSpec, y_lo: int, z_hi: int, workers: int = 1,
             precision_bits: int = 128) -> GcdScanReport:
    """All pairs y_lo <= y < z <= z_hi; the ratio uses the dominant root midpoint."""
    if precision_bits < 128:
        raise DomainError("ratios are computed at no less than 128 bits")
    if z_hi <= y_lo:
        raise DomainError("need z_hi > y_lo")
    cert = _require_pisot(spec)
    seq = eval_range(spec, 0, z_hi)
    first = next((n for n, v in enumerate(seq) if v >= 2), None)
    if first is None or y_lo < first:
        raise DomainError(f"y_lo must be at least {first}, the first index with F_n >= 2")
    shifted = [v - 1 for v in seq]
    if any(shifted[n] == 0 for n in range(y_lo, z_hi + 1)):
        raise DomainError("F_n = 1 inside the scanned range")
    box = cert.dominant_box
    with mpmath.workprec(precision_bits):
        mid = (box.re_lo + box.re_hi) / 2
        log_alpha = mpmath.log(mpmath.mpf(mid.numerator) / mid.denominator)
    k = spec.k
    kappa = Fraction(k, k + 1)
    ys = list(range(y_lo, z_hi))
    if workers <= 1:
        parts = [_gcd_rows(ys, z_hi, shifted, log_alpha, kappa, precision_bits)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_gcd_rows, ys[i::workers], z_hi, shifted, log_alpha,
                                kappa, precision_bits) for i in range(workers)]
            parts = [f.result() for f in futs]
    records = sorted((r for p in parts for r in p[0]), key=lambda r: (r.y, r.z))
    for r in records:
        if shifted[r.y] % r.g or shifted[r.z] % r.g:
            raise InternalError(f"gcd at ({r.y}, {r.z}) does not divide both terms")
    max_ratio = max(p[1] for p in parts)
    slack = max(p[2] for p in parts)
    return GcdScanReport(spec, y_lo, z_hi, tuple(records), max_ratio, slack, kappa,
                         log_alpha, precision_bits)


# ---------------------------------------------------------------------------
# classical quadruples


def _exact_sqrt(n: int):
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_diophantine_tuple(xs) -> bool:
    """Every pairwise product plus one is a perfect square."""
    xs = list(xs)
    return all(_exact_sqrt(xs[i] * xs[j] + 1) is not None
               for i in range(len(xs)) for j in range(i + 1, len(xs)))


def _root(x: int, y: int) -> int:
    r = _exact_sqrt(x * y + 1)
    if r is None:
        raise DomainError(f"pair ({x}, {y}): {x * y + 1} is not a square")
    return r


def euler_quadruple(a: int, b: int) -> tuple[int, int, int, int]:
    """(a, b, a+b+2r, 4r(a+r)(b+r)) with r^2 = ab+1."""
    if a < 1 or b < 1:
        raise DomainError("a and b must be positive")
    r = _root(a, b)
    quad = (a, b, a + b + 2 * r, 4 * r * (a + r) * (b + r))
    if not is_diophantine_tuple(quad):
        raise InternalError(f"{quad} is not a Diophantine quadruple")
    return quad


def dplus_extension(a: int, b: int, c: int) -> int:
    """a + b + c + 2abc + 2rst for the triple with ab+1=r^2, ac+1=s^2, bc+1=t^2."""
    if min(a, b, c) < 1:
        raise DomainError("entries must be positive")
    r, s, t = _root(a, b), _root(a, c), _root(b, c)
    d = a + b + c + 2 * a * b * c + 2 * r * s * t
    if not is_diophantine_tuple((a, b, c, d)):
        raise InternalError(f"({a}, {b}, {c}, {d}) is not a Diophantine quadruple")
    return d
