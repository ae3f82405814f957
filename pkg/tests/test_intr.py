import random
from fractions import Fraction

import pytest

from helpers import is_neg
from valfun.fields.upoly import PoleError
from valfun.fixtures import parse_fn, parse_poly, registry_field
from valfun.intr import (
    EvalSet,
    check_membership,
    continuity_probe,
    in_pointed_max_ideal,
    is_unit_valued,
    localization_certificate,
    pointed_residue,
    sample_falsify,
)
from valfun.values import INF

RING = EvalSet.whole_ring()


def verdict(lit, name, E=RING):
    F = registry_field(name)
    phi = parse_fn(lit, F)
    return check_membership(phi, F, E), phi, F


def test_worked_example_is_integer_valued():
    v, _, _ = verdict("t/(x^2+t)", "t-adic-Q")
    assert v.kind == "yes" and v.exit_code == 0


@pytest.mark.parametrize("name", ["t-adic-Q", "padic2", "lex2-F3", "quad-F2"])
def test_reciprocal_is_refuted(name):
    v, phi, F = verdict("1/x", name)
    assert v.kind == "no" and v.exit_code == 1
    assert F.valuation(v.witness).sign() > 0
    assert is_neg(F.valuation(phi(v.witness)))


def test_rank2_fine_and_coarse():
    v, _, _ = verdict("(1/t)/(x - 1/t)", "lex2-Q")
    assert v.kind == "yes"
    C = registry_field("lex2-Q").coarsen(1)
    phi = parse_fn("(1/t)/(x - 1/t)", C)
    w = check_membership(phi, C, RING)
    assert w.kind == "no"
    assert C.valuation(w.witness) == C.group.zero()
    assert is_neg(C.valuation(phi(w.witness)))


@pytest.mark.parametrize("lit,name,kind", [
    ("x/2", "padic2", "no"),
    ("(x^2+x)/2", "padic2", "yes"),
    ("(x^3-x)/3", "padic3", "yes"),
    ("(x^3-x)/6", "padic3", "yes"),
    ("(x^2-x)/4", "padic2", "no"),
    ("x", "padic2", "yes"),
    ("7/(x^2-2)", "padic7", "no"),
    ("1/(x^2+x+1)", "padic2", "yes"),
])
def test_padic_membership(lit, name, kind):
    v, phi, F = verdict(lit, name)
    assert v.kind == kind
    if kind == "no":
        assert F.valuation(v.witness) >= F.group.zero()
        assert is_neg(F.valuation(phi(v.witness)))


@pytest.mark.parametrize("lit,name", [("(x^3-x)/3", "padic3"), ("(x^2+x)/2", "padic2"), ("1/(x^2+x+1)", "padic2")])
def test_yes_verdicts_survive_exhaustive_residue_classes(lit, name):
    F = registry_field(name)
    phi = parse_fn(lit, F)
    for a in range(-200, 201):
        if phi.den(Fraction(a)) != 0:
            assert F.valuation(phi(Fraction(a))) >= F.group.zero()


def test_window_and_finite_sets():
    F = registry_field("padic2")
    phi = parse_fn("1/x", F)
    assert check_membership(phi, F, EvalSet.window(None, F.group.zero())).kind == "yes"
    assert check_membership(phi, F, EvalSet.finite([Fraction(1), Fraction(3)])).kind == "yes"
    assert check_membership(phi, F, EvalSet.finite([Fraction(2)])).kind == "no"


def test_sample_falsify():
    F = registry_field("padic2")
    hit = sample_falsify(parse_fn("x/2", F), F, RING, budget=50, seed=1)
    assert hit is not None
    assert sample_falsify(parse_fn("(x^2+x)/2", F), F, RING, budget=200, seed=1) is None


def test_pointed_ideals():
    P5 = registry_field("padic5")
    assert pointed_residue(parse_fn("x^2+1", P5), Fraction(3), P5) == 0
    T = registry_field("t-adic-Q")
    assert pointed_residue(parse_fn("t/(x^2+t)", T), T.K.zero, T) == 1
    assert in_pointed_max_ideal(parse_fn("x", T), T.K.zero, T)
    assert not in_pointed_max_ideal(parse_fn("1", T), T.K.zero, T)
    P3 = registry_field("padic3")
    assert in_pointed_max_ideal(parse_fn("x - 3", P3), Fraction(3), P3)


def test_localization_certificate():
    T = registry_field("t-adic-Q")
    cert = localization_certificate(parse_fn("1/(x+1)", T), T, RING, samples=100)
    assert cert.passed and cert.m == 1 and cert.n == 2
    assert cert.eta == T.group.element(Fraction(1, 2))
    assert T.valuation(cert.h.lc()) == T.group.element(-1)
    assert localization_certificate(parse_fn("1", T), T, RING, samples=50).passed
    with pytest.raises(PoleError):
        localization_certificate(parse_fn("1/x", T), T, RING)


def test_unit_valued():
    P2 = registry_field("padic2")
    assert is_unit_valued(parse_poly("x^2+x+1", P2), P2)
    assert not is_unit_valued(parse_poly("x", P2), P2)
    assert is_unit_valued(parse_poly("2*x+1", P2), P2)
    T = registry_field("t-adic-Q")
    assert is_unit_valued(parse_poly("t*x+1", T), T)
    assert is_unit_valued(parse_poly("x^2+1", T), T)


def test_unit_valued_by_evaluation():
    P2 = registry_field("padic2")
    f = parse_poly("x^2+x+1", P2)
    rng = random.Random(0)
    for _ in range(100):
        a = Fraction(rng.randint(-999, 999), 2 * rng.randint(0, 50) + 1)
        assert P2.valuation(f(a)) == P2.group.zero()


def test_continuity_probe():
    T = registry_field("t-adic-Q")
    five = T.group.element(5)
    assert continuity_probe(parse_fn("x", T), T.K.zero, five, T) == five
    phi = parse_fn("t/(x^2+t)", T)
    delta = continuity_probe(phi, T.K.one, T.group.element(3), T)
    assert delta is not INF
    t = T.K.gen("t")
    k = int(delta.coords[0]) + 1
    for j in range(k, k + 4):
        b = T.K.one + t ** j
        assert T.valuation(phi(b) - phi(T.K.one)) > T.group.element(3)


def test_quad_membership_exact():
    F = registry_field("quad-Q")
    # sqrt(s) would need value 1/2, which is not in the value group
    assert check_membership(parse_fn("s/(x^2-s)", F), F, RING).kind == "yes"
    v = check_membership(parse_fn("t/(x^2+x+t)", F), F, RING)
    assert v.kind == "no"
    assert is_neg(F.valuation(parse_fn("t/(x^2+x+t)", F)(v.witness)))


def test_unknown_when_residue_roots_unsupported():
    from valfun.fields import QQ, MonomialField
    from valfun.values import LexInt

    Z = LexInt(1)
    F = MonomialField(QQ, [("t", Z.element(1)), ("c", Z.element(0)), ("e", Z.element(0))], Z)
    v = check_membership(parse_fn("t/(x^2-c)", F), F, RING)
    assert v.kind == "unknown" and v.exit_code == 2
    assert v.unresolved == [Z.zero()]
