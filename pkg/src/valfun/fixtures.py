"""Literal parsing, the JSON fixture format, and the built-in fixture registry.

Literal grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | atom ('^' integer)?
    atom   := integer | name | '(' expr ')'

Names are the generators of the field, the generator of an extension
coefficient field (``z`` by default) and the polynomial variable ``x``.
Rational constants are written as quotients, e.g. ``3/4*s``.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .fields.coeffs import QQ, ExtField, PrimeField
from .fields.upoly import RationalFn, UPoly
from .fields.valued import MonomialField, PAdicField, ValuedField, field_from_json
from .monic_singular import MonicSingularData, approx_construct
from .values import LexInt, QuadIrr


class LiteralError(ValueError):
    def __init__(self, msg: str, text: str, col: Optional[int] = None, line: int = 1):
        where = f" at line {line}, column {col + 1}" if col is not None else ""
        super().__init__(f"{msg}{where}: {text!r}")
        self.line = line
        self.col = col


_BINOPS = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}


def parse_fn(text: str, F: ValuedField, var: str = "x") -> RationalFn:
    """Parse a rational function in ``var`` with coefficients in F's field."""
    K = F.K
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise LiteralError(f"syntax error ({exc.msg})", text, (exc.offset or 1) - 1, exc.lineno or 1) from None
    names = {}
    if isinstance(F, MonomialField):
        for n in F.names:
            names[n] = K.gen(n)
        if isinstance(F.coeffs, ExtField):
            names[F.coeffs.gen_name] = K(F.coeffs.gen)
    def const(c) -> RationalFn:
        return RationalFn(UPoly(K, [c]))

    def ev(node) -> RationalFn:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return const(node.value)
        if isinstance(node, ast.Name):
            if node.id == var:
                return RationalFn(UPoly.x(K))
            if node.id in names:
                return const(names[node.id])
            raise LiteralError(f"unknown name {node.id!r}", text, node.col_offset)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                neg = False
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    neg, e = True, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise LiteralError("exponents must be integers", text, node.right.col_offset)
                return ev(node.left) ** (-e.value if neg else e.value)
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise LiteralError("unsupported operator", text, node.col_offset)
            left, right = ev(node.left), ev(node.right)
            if op == "__truediv__" and right.is_zero():
                raise LiteralError("division by zero", text, node.right.col_offset)
            return getattr(left, op)(right)
        raise LiteralError("unsupported syntax", text, getattr(node, "col_offset", None))

    out = ev(tree)
    if out.den.degree == 0:
        c = out.den.lc()
        out = RationalFn(UPoly(K, [a / c for a in out.num.coeffs]))
    return out


def parse_poly(text: str, F: ValuedField, var: str = "x") -> UPoly:
    phi = parse_fn(text, F, var)
    if phi.den.degree != 0:
        raise LiteralError("expected a polynomial", text)
    c = phi.den.lc()
    return UPoly(phi.ring, [a / c for a in phi.num.coeffs])


def parse_element(text: str, F: ValuedField):
    p = parse_poly(text, F, var="\0")
    return p.coeff(0) if p.degree <= 0 else None


def format_element(e, F) -> str:
    if isinstance(F, PAdicField):
        return str(Fraction(e))
    return F.K(e).format()


def parse_value(text: str, group):
    """``"1/2"``, ``"1,0"`` (lex) or ``"a,b"`` meaning a + b*sqrt2."""
    parts = [p.strip() for p in text.replace("(", "").replace(")", "").split(",")]
    return group.element(tuple(Fraction(p) for p in parts))


# --- JSON fixture format ----------------------------------------------------


@dataclass
class Fixture:
    fields: dict = field(default_factory=dict)  # name -> field JSON
    functions: dict = field(default_factory=dict)  # name -> literal
    monic_singular: Optional[dict] = None
    seed: int = 0

    def to_json(self) -> dict:
        out = {"fields": self.fields, "functions": self.functions, "seed": self.seed}
        if self.monic_singular is not None:
            out["monic_singular"] = self.monic_singular
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Fixture":
        return cls(dict(data.get("fields", {})), dict(data.get("functions", {})), data.get("monic_singular"),
                   int(data.get("seed", 0)))

    @classmethod
    def loads(cls, text: str) -> "Fixture":
        return cls.from_json(json.loads(text))

    def field(self, name: str) -> ValuedField:
        return field_from_json(self.fields[name])


def monic_singular_to_json(data: MonicSingularData) -> dict:
    F0 = data.valuations()[0]
    fmt = lambda p: p.format()
    return {
        "name": data.name,
        "n": data.n,
        "d": format_element(data.d, F0),
        "f": fmt(data.f),
        "g": fmt(data.g),
        "h1": fmt(data.h1),
        "h2": fmt(data.h2),
        "V": [F.to_json() for F in data.V],
        "W": [{"field": F.to_json(), "uniformizer": format_element(pi, F)} for F, pi in data.W],
    }


def monic_singular_from_json(d: dict) -> MonicSingularData:
    V = [field_from_json(x) for x in d["V"]]
    W = [(field_from_json(x["field"]), None, x["uniformizer"]) for x in d["W"]]
    F0 = V[0] if V else W[0][0]
    W = [(F, parse_element(pi, F)) for F, _, pi in W]
    return MonicSingularData(
        int(d["n"]), parse_element(d["d"], F0), parse_poly(d["f"], F0), parse_poly(d["g"], F0),
        parse_poly(d["h1"], F0), parse_poly(d["h2"], F0), V, W, d.get("name", ""),
    )


# --- registry -----------------------------------------------------------------


def _fields():
    Z, L2, Q2 = LexInt(1), LexInt(2), QuadIrr()
    F2, F3 = PrimeField(2), PrimeField(3)
    F4 = ExtField.of_degree(2, 2)
    return {
        "padic2": PAdicField(2),
        "padic3": PAdicField(3),
        "padic5": PAdicField(5),
        "padic7": PAdicField(7),
        "t-adic-Q": MonomialField(QQ, [("t", Z.element(1))], Z),
        "lex2-F3": MonomialField(F3, [("s", L2.element(1, 0)), ("t", L2.element(0, 1))], L2),
        "lex2-Q": MonomialField(QQ, [("s", L2.element(1, 0)), ("t", L2.element(0, 1))], L2),
        "quad-F2": MonomialField(F2, [("s", Q2.element(1, 0)), ("t", Q2.element(0, 1))], Q2),
        "quad-F4": MonomialField(F4, [("s", Q2.element(1, 0)), ("t", Q2.element(0, 1))], Q2),
        "quad-Q": MonomialField(QQ, [("s", Q2.element(1, 0)), ("t", Q2.element(0, 1))], Q2),
    }


FIELD_NAMES = tuple(_fields())


def registry_field(name: str) -> ValuedField:
    fields = _fields()
    if name not in fields:
        raise KeyError(f"unknown field {name!r}; known: {', '.join(fields)}")
    return fields[name]


def f3st() -> MonicSingularData:
    """K = F_3(s,t); V t-adic, W s-adic with uniformizer s; n = 2, d = s."""
    Z = LexInt(1)
    F3 = PrimeField(3)
    V = MonomialField(F3, [("s", Z.element(0)), ("t", Z.element(1))], Z)
    W = MonomialField(F3, [("s", Z.element(1)), ("t", Z.element(0))], Z)
    s = V.K.gen("s")
    f = parse_poly("x^2 + 1", V)
    g = parse_poly("s*x^2 - 1", V)
    h1 = parse_poly("x^2", V)
    h2 = parse_poly("-1", V)
    return MonicSingularData(2, s, f, g, h1, h2, [V], [(W, s)], "F3-st")


def qst() -> MonicSingularData:
    """K = Q(s,t); V (s-1)-adic, W s-adic with uniformizer s; f = x^2 + 1, d = s."""
    Z = LexInt(1)
    V = MonomialField(QQ, [("s", Z.element(1)), ("t", Z.element(0))], Z, centers={"s": 1})
    W = MonomialField(QQ, [("s", Z.element(1)), ("t", Z.element(0))], Z)
    s = V.K.gen("s")
    return approx_construct(parse_poly("x^2 + 1", V), s, [V], [(W, s)], "Q-st")


MONIC_SINGULAR = {"F3-st": f3st, "Q-st": qst}


def load_field(spec: str) -> ValuedField:
    """A registry name or a path to a JSON file holding a field (or a fixture)."""
    try:
        return registry_field(spec)
    except KeyError:
        pass
    try:
        with open(spec) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise KeyError(f"unknown field {spec!r}; known: {', '.join(FIELD_NAMES)} (or a JSON file)") from None
    if "kind" in data:
        return field_from_json(data)
    fx = Fixture.from_json(data)
    if len(fx.fields) != 1:
        raise ValueError("fixture must contain exactly one field")
    return fx.field(next(iter(fx.fields)))


def load_monic_singular(spec: str) -> MonicSingularData:
    key = spec.lower().replace("_", "-").removesuffix(".json")
    for name, fn in MONIC_SINGULAR.items():
        if key == name.lower():
            return fn()
    with open(spec) as fh:
        data = json.load(fh)
    return monic_singular_from_json(data.get("monic_singular", data))
