"""Random generators and brute-force oracles shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction

from valfun.fields.upoly import UPoly
from valfun.fixtures import registry_field
from valfun.values import INF

ORACLE_FIELDS = ("padic2", "t-adic-Q", "lex2-F3", "quad-F2")


def field(name):
    return registry_field(name)


def value_in(F, rng: random.Random, lo: int, hi: int):
    """Lattice value with every basis coordinate in [lo, hi]."""
    return F.random_value(rng, lo, hi)


def random_poly(F, rng: random.Random, max_deg: int = 8, lo: int = -10, hi: int = 10, p_zero: float = 0.25,
                min_val=None):
    """Nonzero polynomial whose nonzero coefficients have values drawn from [lo, hi]."""
    deg = rng.randint(0, max_deg)
    while True:
        cs = []
        for i in range(deg + 1):
            if i < deg and rng.random() < p_zero:
                cs.append(0)
                continue
            g = value_in(F, rng, lo, hi)
            if min_val is not None and g < min_val:
                g = min_val
            cs.append(F.random_element_of_value(rng, g))
        f = UPoly(F.K, cs)
        if not f.is_zero():
            return f


def random_gamma(F, rng: random.Random, span: int = 12, den: int = 6):
    """Element of the divisible hull with small rational coordinates."""
    return F.group.element(*[Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))
                             for _ in range(F.group.dim)])


def brute_minval(f: UPoly, F, gamma):
    """min over the lines v(a_i) + i*gamma, no envelope involved."""
    best = None
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        y = F.valuation(c) + gamma * i
        if best is None or y < best:
            best = y
    return best


def brute_values(f: UPoly, F):
    return [(i, F.valuation(c)) for i, c in enumerate(f.coeffs) if c != 0]


def lines_min(vals, gamma):
    best = None
    for i, v in vals:
        y = v + gamma * i
        if best is None or y < best:
            best = y
    return best


def direct_value(phi, a, F):
    """v(phi(a)) by plain evaluation, INF at zeros."""
    return F.valuation(phi(a))


def roots_by_scan(p: UPoly, R) -> list:
    """Roots of p in a finite field by evaluating at every element."""
    return [e for e in R.elements() if p(e) == 0]


def is_neg(v) -> bool:
    return v is not INF and v.sign() < 0
