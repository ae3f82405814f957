import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_values, field, lines_min, random_gamma, random_poly
from valfun.fixtures import parse_fn, parse_poly, registry_field
from valfun.newton import (
    PiecewiseLinear,
    add,
    canonical,
    evaluate,
    minval_poly,
    minval_rat,
    nonneg_on_ray,
    pl_min,
    slopes_at,
    sub,
)
from valfun.values import LexInt

Z = LexInt(1)


def g(x):
    return Z.element(Fraction(x))


@pytest.fixture
def env():
    F = registry_field("padic2")
    return minval_poly(parse_poly("2*x^2 + x + 4", F), F)


def test_envelope_shape(env):
    assert env.slopes == [2, 1, 0]
    assert list(env.breakpoints) == [g(-1), g(2)]


def test_envelope_values(env):
    assert evaluate(env, g(0)) == g(0)
    assert evaluate(env, g(2)) == g(2)
    assert evaluate(env, g(-1)) == g(-1)


def test_slopes_at(env):
    assert slopes_at(env, g(2)) == (1, 0)
    assert slopes_at(env, g(0)) == (1, 1)


def test_monomial_is_one_line():
    F = registry_field("padic2")
    m = minval_poly(parse_poly("x^5", F), F)
    assert m.segments == ((5, g(0)),)


def test_breakpoint_off_lattice():
    F = registry_field("t-adic-Q")
    m = minval_poly(parse_poly("x^2 + t", F), F)
    assert list(m.breakpoints) == [g(Fraction(1, 2))]
    assert not m.breakpoints[0].in_lattice


def test_rational_envelope():
    F = registry_field("t-adic-Q")
    m = minval_rat(parse_fn("t/(x^2+t)", F), F)
    assert m.segments == ((-2, g(1)), (0, g(0)))
    assert slopes_at(m, g(Fraction(1, 2))) == (-2, 0)
    assert minval_rat(parse_fn("(x+1)/(x+1)", F), F).is_zero()


def test_arithmetic_on_envelopes():
    one, two = PiecewiseLinear.line(Z, 1), PiecewiseLinear.line(Z, 2)
    assert add(one, two).segments == ((3, g(0)),)
    low = pl_min(one, PiecewiseLinear.line(Z, 0, g(1)))
    assert low.slopes == [1, 0] and list(low.breakpoints) == [g(1)]
    diff = sub(low, low)
    assert canonical(Z, diff.segments, diff.breakpoints).is_zero()


def test_nonneg_on_ray():
    F = registry_field("t-adic-Q")
    ok, _ = nonneg_on_ray(minval_rat(parse_fn("t/(x^2+t)", F), F), g(0))
    assert ok
    ok, witness = nonneg_on_ray(minval_rat(parse_fn("1/x", F), F), g(0))
    assert not ok and witness == g(1)
    assert nonneg_on_ray(PiecewiseLinear.zero(Z), g(0))[0]


@pytest.mark.parametrize("name", ["padic2", "t-adic-Q", "lex2-F3", "quad-F2"])
def test_envelope_matches_pointwise_min(name):
    F, rng = field(name), random.Random(name)
    for _ in range(40):
        f = random_poly(F, rng)
        m, vals = minval_poly(f, F), brute_values(f, F)
        for _ in range(20):
            x = random_gamma(F, rng)
            assert evaluate(m, x) == lines_min(vals, x)


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=9), st.fractions(-15, 15, max_denominator=8))
@settings(max_examples=200)
def test_envelope_property_padic(exps, x):
    F = registry_field("padic3")
    f = parse_poly(" + ".join(f"3^({e})*x^{i}" if e >= 0 else f"x^{i}/3^({-e})" for i, e in enumerate(exps)), F)
    assert evaluate(minval_poly(f, F), g(x)) == lines_min(brute_values(f, F), g(x))


@pytest.mark.parametrize("name", ["t-adic-Q", "quad-F2"])
def test_additivity(name):
    F, rng = field(name), random.Random(f"add-{name}")
    for _ in range(40):
        f, h = random_poly(F, rng, max_deg=4), random_poly(F, rng, max_deg=4)
        lhs = minval_poly(f * h, F)
        rhs = add(minval_poly(f, F), minval_poly(h, F))
        assert canonical(F.group, lhs.segments, lhs.breakpoints) == canonical(F.group, rhs.segments, rhs.breakpoints)


def test_envelope_is_concave_and_continuous():
    F, rng = field("lex2-F3"), random.Random(5)
    for _ in range(40):
        m = minval_poly(random_poly(F, rng), F)
        assert m.slopes == sorted(m.slopes, reverse=True)
        for k, b in enumerate(m.breakpoints):
            (c0, b0), (c1, b1) = m.segments[k], m.segments[k + 1]
            assert b * c0 + b0 == b * c1 + b1
