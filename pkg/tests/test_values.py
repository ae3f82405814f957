import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valfun.values import (
    INF,
    GroupMismatch,
    Lattice,
    LexInt,
    Ordering,
    QuadIrr,
    compare,
    find_positive_below,
    has_minimal_positive,
    quad_sign,
    scale,
)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_lex_order():
    L = LexInt(2)
    assert compare(L.element(1, 0), L.element(0, 5)) is Ordering.GT
    a = L.element(3, -2)
    assert compare(a, a) is Ordering.EQ


def test_quad_order_matches_float():
    Q = QuadIrr()
    assert compare(Q.element(1, 1), Q.element(2, 0)) is Ordering.GT


@given(fracs, fracs)
def test_quad_sign_agrees_with_high_precision(a, b):
    from decimal import Decimal, getcontext

    getcontext().prec = 60
    approx = Decimal(a.numerator) / Decimal(a.denominator) + Decimal(b.numerator) / Decimal(b.denominator) * Decimal(2).sqrt()
    want = 0 if a == 0 and b == 0 else (1 if approx > 0 else -1)
    assert quad_sign(a, b) == want


def test_scale():
    L1, L2 = LexInt(1), LexInt(2)
    h = scale(Fraction(1, 2), L1.element(1))
    assert h.coords == (Fraction(1, 2),) and not h.in_lattice
    assert scale(3, L1.element(Fraction(1, 3))) == L1.element(1)
    assert scale(Fraction(1, 2), L2.element(0, 3)).coords == (0, Fraction(3, 2))


def test_find_positive_below_quad():
    Q = QuadIrr()
    got = find_positive_below(Q, Q.element(Fraction(1, 10), 0), 20)
    assert got == Q.element(17, -12)
    # oracle: scan the same box for the smallest positive value below 1/10
    vals = [(a + b * math.sqrt(2), a, b) for a, b in itertools.product(range(-20, 21), repeat=2)]
    best = min(v for v in vals if 1e-12 < v[0] < 0.1)
    assert (best[1], best[2]) == (17, -12)


def test_find_positive_below_lex():
    assert find_positive_below(LexInt(1), LexInt(1).element(Fraction(1, 2))) is None
    L2 = LexInt(2)
    assert find_positive_below(L2, L2.element(0, 3)) == L2.element(0, 1)


def test_minimal_positive():
    assert has_minimal_positive(LexInt(1))
    assert has_minimal_positive(LexInt(2))
    assert not has_minimal_positive(QuadIrr())


def test_lex2_minimal_positive_by_scan():
    L2 = LexInt(2)
    box = [L2.element(a, b) for a, b in itertools.product(range(-5, 6), repeat=2)]
    pos = [g for g in box if g.sign() > 0]
    assert min(pos) == L2.element(0, 1)


def test_inf_absorbs_and_dominates():
    L = LexInt(1)
    assert L.element(5) < INF
    assert L.element(5) + INF is INF
    assert INF.sign() == 1


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        LexInt(1).element(1) + LexInt(2).element(1, 0)


@given(st.lists(fracs, min_size=2, max_size=2), st.lists(fracs, min_size=2, max_size=2),
       st.lists(fracs, min_size=2, max_size=2))
def test_quad_order_is_translation_invariant(a, b, c):
    Q = QuadIrr()
    x, y, z = Q.element(*a), Q.element(*b), Q.element(*c)
    assert (x < y) == (x + z < y + z)


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=3))
@settings(max_examples=60)
def test_lattice_contains_its_generators_and_sums(gens):
    L2 = LexInt(2)
    gs = [L2.element(*g) for g in gens]
    lat = Lattice(L2, gs)
    for g in gs:
        assert lat.contains(g)
    assert lat.contains(gs[0] + gs[-1])
    assert lat.contains(L2.zero())


def test_lattice_membership_of_half():
    L1 = LexInt(1)
    lat = Lattice(L1, [L1.element(1)])
    assert not lat.contains(L1.element(Fraction(1, 2)))
    assert lat.is_discrete


def test_json_roundtrip():
    from valfun.values import GroupDescriptor, element_from_json

    for G in (LexInt(1), LexInt(3), QuadIrr()):
        assert GroupDescriptor.from_json(G.to_json()) == G
        e = G.element(*[Fraction(k + 1, 3) for k in range(G.dim)])
        assert element_from_json(G, e.to_json()) == e
