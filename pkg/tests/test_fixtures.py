import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from valfun.fields import field_from_json
from valfun.fixtures import (
    FIELD_NAMES,
    Fixture,
    LiteralError,
    format_element,
    load_field,
    load_monic_singular,
    monic_singular_from_json,
    monic_singular_to_json,
    parse_element,
    parse_fn,
    parse_poly,
    parse_value,
    registry_field,
)
from valfun.values import LexInt, QuadIrr


@pytest.mark.parametrize("name", FIELD_NAMES)
def test_element_literal_roundtrip(name):
    F = registry_field(name)
    rng = random.Random(name)
    for _ in range(25):
        e = F.random_element(rng)
        assert parse_element(format_element(e, F), F) == e


@pytest.mark.parametrize("name", ["padic3", "lex2-F3", "quad-F4", "t-adic-Q"])
def test_poly_literal_roundtrip(name):
    F = registry_field(name)
    rng = random.Random(name)
    for _ in range(15):
        p = parse_poly(" + ".join(f"({format_element(F.random_element(rng), F)})*x^{i}" for i in range(4)), F)
        assert parse_poly(p.format(), F) == p
        phi = parse_fn(f"({p.format()})/(x^2 + 1)", F)
        assert parse_fn(phi.format(), F) == phi


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
@settings(max_examples=80)
def test_rational_literals(a, b):
    F = registry_field("padic5")
    from fractions import Fraction

    assert parse_element(f"{a}/{b}", F) == Fraction(a, b)


def test_literal_errors_carry_position():
    F = registry_field("t-adic-Q")
    with pytest.raises(LiteralError) as exc:
        parse_fn("t + y", F)
    assert exc.value.col == 4 and exc.value.line == 1
    with pytest.raises(LiteralError):
        parse_fn("x^(1/2)", F)
    with pytest.raises(LiteralError):
        parse_fn("x/(t-t)", F)
    with pytest.raises(LiteralError):
        parse_poly("1/x", F)


def test_values():
    assert parse_value("1,0", LexInt(2)) == LexInt(2).element(1, 0)
    assert parse_value("1/2", LexInt(1)) == LexInt(1).element(0.5)
    assert parse_value("(1,1)", QuadIrr()) == QuadIrr().element(1, 1)


@pytest.mark.parametrize("name", FIELD_NAMES)
def test_field_fixture_bit_exact(name):
    F = registry_field(name)
    fx = Fixture(fields={name: F.to_json()}, functions={"phi": "t/(x^2+t)"}, seed=7)
    text = fx.dumps()
    again = Fixture.loads(text)
    assert again.dumps() == text
    assert again.field(name).to_json() == F.to_json()
    assert json.loads(text)["seed"] == 7


def test_load_field_from_file(tmp_path):
    F = registry_field("quad-F4")
    p = tmp_path / "f.json"
    p.write_text(json.dumps(F.to_json()))
    assert load_field(str(p)).to_json() == F.to_json()
    q = tmp_path / "fx.json"
    q.write_text(Fixture(fields={"a": F.to_json()}).dumps())
    assert load_field(str(q)).to_json() == F.to_json()
    with pytest.raises(KeyError):
        load_field("no-such-field")


@pytest.mark.parametrize("name", ["F3-st", "Q-st"])
def test_monic_singular_roundtrip(name, tmp_path):
    data = load_monic_singular(name)
    js = monic_singular_to_json(data)
    back = monic_singular_from_json(json.loads(json.dumps(js)))
    assert monic_singular_to_json(back) == js
    assert back.f == data.f and back.g == data.g and back.d == data.d
    path = tmp_path / "ms.json"
    path.write_text(Fixture(monic_singular=js).dumps())
    assert monic_singular_to_json(load_monic_singular(str(path))) == js


def test_field_json_has_no_floats():
    for name in FIELD_NAMES:
        text = json.dumps(registry_field(name).to_json())
        assert "." not in text.replace("\"", "")
        field_from_json(json.loads(text))
