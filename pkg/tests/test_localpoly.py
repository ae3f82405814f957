import random

import pytest

from helpers import field, random_poly
from valfun.fields import UPoly
from valfun.fixtures import parse_element, parse_fn, parse_poly, registry_field
from valfun.localpoly import attain_minval, attain_minval_rat, exact_valuation, local_poly, raise_witness, verify_attains
from valfun.newton import evaluate, minval_poly
from valfun.values import INF


def test_loc_at_breakpoint():
    F = registry_field("padic2")
    lp = local_poly(parse_poly("2*x^2 + x + 4", F), 4, F)
    assert lp.support == (0, 1) and lp.d == 1
    assert lp.loc == UPoly(F.residue_field, [1, 1])


def test_loc_all_terms_and_single_term():
    F = registry_field("padic2")
    lp = local_poly(parse_poly("x^2 + 1", F), 1, F)
    assert lp.d == 2 and lp.loc == UPoly(F.residue_field, [1, 0, 1])
    lp = local_poly(parse_poly("x", F), 6, F)
    assert lp.loc == UPoly(F.residue_field, [0, 1])


def test_exact_valuation():
    F = registry_field("padic2")
    assert exact_valuation(parse_poly("x^2 + 2", F), 6, F) == F.group.element(1)
    assert exact_valuation(parse_poly("1", F), 6, F) == F.group.zero()
    T = registry_field("t-adic-Q")
    t = T.K.gen("t")
    assert exact_valuation(parse_poly("x - t", T), t, T) is INF


def test_raise_witness():
    F = registry_field("padic2")
    f = parse_poly("2*x^2 + x + 4", F)
    s = raise_witness(f, 4, F)
    assert s == 4 and F.valuation(f(s)) == F.group.element(3)
    assert raise_witness(parse_poly("x^2", F), 4, F) is None
    P3 = registry_field("padic3")
    s = raise_witness(parse_poly("x^2 - 1", P3), 1, P3)
    assert P3.valuation(s ** 2 - 1).sign() > 0


def test_attain_minval():
    T = registry_field("t-adic-Q")
    zero = T.group.zero()
    a = attain_minval([parse_poly("x - 1", T)], zero, T)
    assert a == 2
    P2 = registry_field("padic2")
    assert attain_minval([parse_poly("x - 1", P2)], zero, P2) is None
    gamma = T.group.element(3)
    assert attain_minval([parse_poly("x^2", T)], gamma, T) == T.element_of_value(gamma)


def test_attain_minval_rat():
    T = registry_field("t-adic-Q")
    a = attain_minval_rat([parse_fn("t/(x^2+t)", T)], T.group.zero(), T)
    assert T.valuation(parse_fn("t/(x^2+t)", T)(a)) == T.group.element(1)
    F2 = registry_field("quad-F2")
    pair = [parse_fn("x - 1", F2), parse_fn("1/(x + 1)", F2)]
    assert attain_minval_rat(pair, F2.group.zero(), F2) is None


@pytest.mark.parametrize("name", ["t-adic-Q", "lex2-F3", "quad-F4"])
def test_attain_minval_verified_directly(name):
    F, rng = field(name), random.Random(name)
    for _ in range(30):
        fs = [random_poly(F, rng, max_deg=3, lo=-3, hi=3) for _ in range(2)]
        gamma = F.random_value(rng, -2, 2)
        a = attain_minval(fs, gamma, F)
        if a is None:
            continue
        assert F.valuation(a) == gamma
        assert verify_attains(fs, a, F)
        for f in fs:
            assert F.valuation(f(a)) == evaluate(minval_poly(f, F), gamma)


def test_root_dichotomy_small():
    F = registry_field("quad-F4")
    rng = random.Random(3)
    for _ in range(100):
        f = random_poly(F, rng, max_deg=4, lo=-2, hi=2)
        t = F.random_element_of_value(rng, F.random_value(rng, -2, 2))
        lp = local_poly(f, t, F)
        for u in F.residue_field.nonzero_elements():
            v = F.valuation(f(t * F.lift(u)))
            if lp.loc(u) == 0:
                assert v is INF or v > lp.pivot
            else:
                assert v == lp.pivot
