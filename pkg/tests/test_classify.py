import itertools

import pytest
import sympy

from helpers import roots_by_scan
from valfun.classify import (
    DomainDescriptor,
    GroupTooCoarse,
    RootsNotRealizable,
    SlopeConditionError,
    classify,
    find_monic_unit_valued,
    find_rootless,
    find_rootless_pair,
    parse_residue,
    principality_obstruction,
    valuation_lemma_witness,
)
from valfun.fields import QQ, ExtField, PrimeField, UPoly
from valfun.fixtures import parse_fn, registry_field
from valfun.intr import is_unit_valued
from valfun.newton import evaluate, minval_rat
from valfun.values import INF, LexInt, QuadIrr


def test_classification_rows():
    c = classify(DomainDescriptor("finite", LexInt(1), 5))
    assert c.prufer and c.bezout
    c = classify(DomainDescriptor("algclosed", QuadIrr()))
    assert not c.prufer and not c.bezout
    c = classify(DomainDescriptor("finite", QuadIrr(), 2))
    assert c.prufer and c.bezout
    assert [p.format() for p in c.pair_witness] == ["x^2 + x + 1", "x^3 + x + 1"]
    c = classify(DomainDescriptor("algclosed", LexInt(2)))
    assert c.prufer and c.bezout


def test_parse_residue():
    assert parse_residue("finite:2") == ("finite", 2)
    assert parse_residue("algclosed") == ("algclosed", None)
    with pytest.raises(ValueError):
        parse_residue("reals")


def test_find_rootless_finite():
    F2, F3 = PrimeField(2), PrimeField(3)
    assert find_rootless(F2, 2) == UPoly(F2, [1, 1, 1])
    p = find_rootless(F3, 3)
    assert p == UPoly(F3, [1, -1, 0, 1])
    assert [int(p(e)) for e in F3.elements()] == [1, 1, 1]
    assert find_rootless(F3, 1) is None
    assert find_rootless(QQ, 1) is None


@pytest.mark.parametrize("R", [PrimeField(2), PrimeField(3), PrimeField(5), ExtField.of_degree(2, 2)])
@pytest.mark.parametrize("n", [2, 3])
def test_rootless_is_first_in_enumeration(R, n):
    p = find_rootless(R, n)
    assert not roots_by_scan(p, R)
    elems = list(R.elements())
    # every monic polynomial enumerated before p has a root
    for low in itertools.product(elems, repeat=n):
        q = UPoly(R, list(reversed(low)) + [R.one])
        if q == p:
            break
        assert roots_by_scan(q, R)


def test_rootless_pairs():
    a, b = find_rootless_pair(PrimeField(2))
    assert (a.format(), b.format()) == ("x^2 + x + 1", "x^3 + x + 1")
    a, b = find_rootless_pair(QQ)
    assert (a.format(), b.format()) == ("x^2 + 1", "x^3 + 2")
    x = sympy.Symbol("x")
    assert not sympy.Poly(x ** 3 + 2, x).ground_roots()


def test_monic_unit_valued():
    P2 = registry_field("padic2")
    f = find_monic_unit_valued(P2, 2)
    assert f.format() == "x^2 + x + 1" and is_unit_valued(f, P2)
    assert find_monic_unit_valued(P2, 1) is None
    T = registry_field("t-adic-Q")
    f = find_monic_unit_valued(T, 2)
    assert f is not None and is_unit_valued(f, T)


def test_lemma_witness_raises_value():
    F = registry_field("quad-F2")
    phi = parse_fn("(x-1)^2", F)
    zero = F.group.zero()
    w = valuation_lemma_witness(phi, zero, F)
    assert w.a == F.K.gen("s") + 1
    assert F.valuation(w.a) == zero
    assert F.valuation(phi(w.a)) == F.group.element(2, 0) and w.raised


def test_lemma_witness_inverse_direction():
    F = registry_field("quad-F2")
    phi = parse_fn("1/(x-1)^2", F)
    zero = F.group.zero()
    w = valuation_lemma_witness(phi, zero, F)
    assert not w.raised
    assert F.valuation(phi(w.a)) < evaluate(minval_rat(phi, F), zero)


def test_lemma_errors():
    T = registry_field("t-adic-Q")
    zero = T.group.zero()
    with pytest.raises(SlopeConditionError):
        valuation_lemma_witness(parse_fn("x", T), zero, T)
    with pytest.raises(GroupTooCoarse):
        valuation_lemma_witness(parse_fn("(x-1)^2 - t", T), zero, T)
    F = registry_field("quad-F2")
    with pytest.raises(RootsNotRealizable):
        valuation_lemma_witness(parse_fn("x^2+x+1", F), F.group.zero(), F)


def test_lemma_witness_on_quad_f4():
    F = registry_field("quad-F4")
    phi = parse_fn("x^2+x+1", F)
    w = valuation_lemma_witness(phi, F.group.zero(), F)
    v = F.valuation(phi(w.a))
    assert v is INF or v > F.group.zero()


def test_obstruction():
    T = registry_field("t-adic-Q")
    x, t = parse_fn("x", T), parse_fn("t", T)
    ob = principality_obstruction([x, t], x, T)
    assert ob.refuted and ob.gamma is not None
    assert not principality_obstruction([x], x, T).refuted
    ob = principality_obstruction([x, t], parse_fn("x+t", T), T)
    assert ob.refuted
    with pytest.raises(ValueError):
        principality_obstruction([x], x, registry_field("padic2"))
