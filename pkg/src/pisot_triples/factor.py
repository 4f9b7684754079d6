"""Factorization of integer/rational polynomials over the rationals."""
from __future__ import annotations

from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_factor_list

from .errors import DomainError
from .poly import IntPoly, RatPoly


def factor_over_rationals(p: RatPoly) -> list[tuple[IntPoly, int]]:
    """Irreducible factorization of ``p`` up to a rational unit.

    Each factor is primitive with positive leading coefficient. The list is
    ordered by degree, then lexicographically on the ascending coefficient
    tuple, so the result is reproducible.

    Backed by sympy's Zassenhaus implementation (squarefree split, modular
    factorization, Hensel lifting, recombination).
    """
    if p.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    prim = p.primitive()
    if prim.degree == 0:
        return []
    _, facs = dup_factor_list([int(c) for c in reversed(prim.coeffs)], ZZ)
    out = []
    for f, mult in facs:
        q = IntPoly(int(c) for c in reversed(f))
        if q.lc < 0:
            q = -q
        out.append((q, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    return out


def is_irreducible(p: RatPoly) -> bool:
    facs = factor_over_rationals(p)
    return len(facs) == 1 and facs[0][1] == 1
