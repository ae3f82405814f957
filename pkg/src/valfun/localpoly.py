"""Local polynomials, exact valuations of evaluations, and minval-attaining points."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .fields.upoly import RationalFn, UPoly
from .fields.valued import residue_roots
from .newton import minval_poly
from .values import INF, GroupElement


@dataclass(frozen=True)
class LocalPolyResult:
    loc: UPoly  # monic, over the residue field
    d: int
    support: tuple
    pivot: GroupElement  # minval_f(v(t))

    def nonzero_roots(self) -> list:
        return [r for r, _ in residue_roots(self.loc) if r != 0]


def local_poly(f: UPoly, t, F) -> LocalPolyResult:
    """The reduction of f(t x) / (a_d t^d) modulo the maximal ideal."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if t == 0:
        raise ValueError("local polynomials need t != 0")
    gamma = F.valuation(t)
    vals = {i: F.valuation(c) + gamma * i for i, c in enumerate(f.coeffs) if c != 0}
    pivot = min(vals.values())
    support = tuple(i for i in sorted(vals) if vals[i] == pivot)
    d = support[-1]
    lead = f.coeffs[d] * t ** d
    R = F.residue_field
    coeffs = [R.zero] * (d + 1)
    for i in support:
        coeffs[i] = F.residue(f.coeffs[i] * t ** i / lead)
    return LocalPolyResult(UPoly(R, coeffs), d, support, pivot)


def exact_valuation(f, t, F):
    """v(f(t)) by direct evaluation; f may be a polynomial or a rational function."""
    return F.valuation(f(t))


def raise_witness(f: UPoly, t, F):
    """s with v(s) = v(t) and v(f(s)) > minval_f(v(t)), or None."""
    lp = local_poly(f, t, F)
    roots = lp.nonzero_roots()
    if not roots:
        return None
    return t * F.lift(roots[0])


def _residue_candidates(R, limit: int):
    """Nonzero residues in canonical order; at most ``limit`` for infinite fields."""
    it = R.nonzero_elements()
    if R.is_finite:
        return it
    return itertools.islice(it, limit)


def attain_minval(fs: Sequence[UPoly], gamma: GroupElement, F):
    """a with v(a) = gamma and v(f(a)) = minval_f(gamma) for every f in fs."""
    b = F.element_of_value(gamma)
    locs = [local_poly(f, b, F).loc for f in fs]
    budget = sum(max(l.degree, 0) for l in locs) + 1
    for u in _residue_candidates(F.residue_field, budget):
        if all(l(u) != 0 for l in locs):
            return b * F.lift(u)
    return None


def attain_minval_rat(phis: Sequence[RationalFn], gamma: GroupElement, F):
    polys = []
    for phi in phis:
        polys.extend([phi.num, phi.den])
    return attain_minval(polys, gamma, F)


def verify_attains(fs: Sequence[UPoly], a, F) -> bool:
    gamma = F.valuation(a)
    return all(F.valuation(f(a)) == minval_poly(f, F)(gamma) for f in fs)
