"""Sparse multivariate polynomials and rational functions over a coefficient field.

A ``FracField(base, names)`` is the rational function field base(names).
Its elements (``RatFunc``) are kept as numerator/denominator pairs with a
cheap normal form: common monomial factors are cancelled, the denominator
is made monic with respect to its largest exponent, and in one variable the
polynomial gcd is removed.  Equality is decided by cross-multiplication, so
none of this is needed for correctness.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Optional

import sympy


class MPoly:
    __slots__ = ("base", "nvars", "terms")

    def __init__(self, base, nvars: int, terms: Optional[dict] = None):
        self.base = base
        self.nvars = nvars
        self.terms = {} if terms is None else {e: c for e, c in terms.items() if c != 0}

    @classmethod
    def _raw(cls, base, nvars, terms):
        p = cls.__new__(cls)
        p.base = base
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, base, nvars, c) -> "MPoly":
        c = base(c)
        return cls._raw(base, nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def monomial(cls, base, nvars, exps, c=1) -> "MPoly":
        return cls(base, nvars, {tuple(exps): base(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.base.zero)

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s != 0:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._raw(self.base, self.nvars, out)

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self.base, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c0 = self.base(other)
            if c0 == 0:
                return MPoly._raw(self.base, self.nvars, {})
            return MPoly._raw(self.base, self.nvars, {e: c * c0 for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MPoly._raw(self.base, self.nvars, {e: c for e, c in out.items() if c != 0})

    def __pow__(self, n: int) -> "MPoly":
        result = MPoly.constant(self.base, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def shift_exponents(self, delta) -> "MPoly":
        return MPoly._raw(self.base, self.nvars,
                          {tuple(a + d for a, d in zip(e, delta)): c for e, c in self.terms.items()})

    def min_exponents(self):
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def substitute(self, images: list["MPoly"]) -> "MPoly":
        """Replace variable i by images[i] (all in the same ring)."""
        out = MPoly._raw(self.base, self.nvars, {})
        powers: dict = {}
        for e, c in self.terms.items():
            term = MPoly.constant(self.base, self.nvars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def dense(self, var: int = 0) -> list:
        """Coefficient list (low first) of a polynomial in one variable."""
        if not self.terms:
            return []
        d = max(e[var] for e in self.terms)
        out = [self.base.zero] * (d + 1)
        for e, c in self.terms.items():
            out[e[var]] = c
        return out

    @classmethod
    def from_dense(cls, base, coeffs, nvars=1, var=0) -> "MPoly":
        terms = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                e = [0] * nvars
                e[var] = i
                terms[tuple(e)] = c
        return cls._raw(base, nvars, terms)


# --- dense univariate helpers over a field -------------------------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def dense_divmod(a, b, zero):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv = 1 / b[-1] if not hasattr(b[-1], "inverse") else b[-1].inverse()
    q = [zero] * (len(a) - len(b) + 1)
    a = list(a)
    for d in range(len(a) - len(b), -1, -1):
        c = a[d + len(b) - 1] * inv
        q[d] = c
        if c != 0:
            for j, y in enumerate(b):
                a[d + j] = a[d + j] - c * y
    return _trim(q), _trim(a[: len(b) - 1])


def dense_gcd(a, b, zero):
    a, b = _trim(a), _trim(b)
    if a and b and all(isinstance(c, (int, Fraction)) for c in a + b):
        return _rational_gcd(a, b)
    while b:
        _, r = dense_divmod(a, b, zero)
        a, b = b, r
    if not a:
        return a
    inv = 1 / a[-1] if not hasattr(a[-1], "inverse") else a[-1].inverse()
    return [c * inv for c in a]


def _rational_gcd(a, b):
    """Monic gcd over Q; Euclid on Fractions swells badly, sympy does not."""
    to_poly = lambda cs: sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(cs)],
                                    _X, domain="QQ")
    g = to_poly(a).gcd(to_poly(b)).monic()
    return [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]


_X = sympy.Symbol("x")


class FracField:
    """The field base(names) of rational functions."""

    is_finite = False
    order = None

    def __init__(self, base, names):
        self.base = base
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.zero = RatFunc(self, MPoly(base, self.nvars), MPoly.constant(base, self.nvars, 1), normalize=False)
        self.one = RatFunc(self, MPoly.constant(base, self.nvars, 1), MPoly.constant(base, self.nvars, 1), normalize=False)

    @property
    def characteristic(self):
        return self.base.characteristic

    def poly_one(self) -> MPoly:
        return MPoly.constant(self.base, self.nvars, 1)

    def from_poly(self, p: MPoly) -> "RatFunc":
        return RatFunc(self, p, self.poly_one())

    def gen(self, name: str) -> "RatFunc":
        i = self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return self.from_poly(MPoly.monomial(self.base, self.nvars, e))

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial(self, exps, c=1) -> "RatFunc":
        num = [max(e, 0) for e in exps]
        den = [max(-e, 0) for e in exps]
        return RatFunc(self, MPoly.monomial(self.base, self.nvars, num, c),
                       MPoly.monomial(self.base, self.nvars, den), normalize=False)

    def __call__(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.field == self:
                return x
            if x.field.base == self.base and set(x.field.names) <= set(self.names):
                return self.embed(x)
            raise TypeError(f"cannot coerce element of {x.field} into {self}")
        return RatFunc(self, MPoly.constant(self.base, self.nvars, x), self.poly_one(), normalize=False)

    def embed(self, x: "RatFunc") -> "RatFunc":
        """Map an element of a field on a subset of our variables into us."""
        idx = [self.names.index(n) for n in x.field.names]

        def move(p: MPoly) -> MPoly:
            terms = {}
            for e, c in p.terms.items():
                ne = [0] * self.nvars
                for j, k in zip(idx, e):
                    ne[j] = k
                terms[tuple(ne)] = c
            return MPoly._raw(self.base, self.nvars, terms)

        return RatFunc(self, move(x.num), move(x.den), normalize=False)

    def elements(self) -> Iterator["RatFunc"]:
        yield self.zero
        yield from self.nonzero_elements()

    def nonzero_elements(self) -> Iterator["RatFunc"]:
        """Constants of the base first, then polynomials by total degree."""
        for c in self.base.nonzero_elements() if not self.base.is_finite else list(self.base.nonzero_elements()):
            yield self(c)
            if not self.base.is_finite:
                break
        if not self.base.is_finite:
            # integers 2, 3, ... interleaved with polynomials of growing degree
            count = itertools.count(2)
            for deg in itertools.count(1):
                for _ in range(2):
                    yield self(next(count))
                for p in self._polys_of_degree(deg, [self.base(c) for c in range(-1, 2)]):
                    yield p
        else:
            coeffs = list(self.base.elements())
            for deg in itertools.count(1):
                yield from self._polys_of_degree(deg, coeffs)

    def _polys_of_degree(self, deg, coeffs):
        monos = [e for e in itertools.product(range(deg + 1), repeat=self.nvars) if sum(e) <= deg]
        monos.sort(key=lambda e: (sum(e), e))
        top = [m for m in monos if sum(m) == deg]
        for choice in itertools.product(coeffs, repeat=len(monos)):
            terms = {m: c for m, c in zip(monos, choice) if c != 0}
            if any(m in terms for m in top):
                yield self.from_poly(MPoly(self.base, self.nvars, terms))

    def format(self, e) -> str:
        return e.format()

    def to_json(self) -> dict:
        return {"kind": "function_field", "base": self.base.to_json(), "vars": list(self.names)}

    def __eq__(self, other):
        return isinstance(other, FracField) and other.base == self.base and other.names == self.names

    def __hash__(self):
        return hash(("Frac", self.base, self.names))

    def __repr__(self):
        return f"{self.base!r}({','.join(self.names)})"


class RatFunc:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: FracField, num: MPoly, den: MPoly, normalize: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.field = field
        if normalize:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    def _lift(self, other) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            if other.field is self.field or other.field == self.field:
                return other
            return self.field(other)
        try:
            return self.field(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, normalize=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num.terms or not o.num.terms:
            return self.field.zero
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.field, self.num ** n, self.den ** n, normalize=False)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return False
        if self.num == o.num and self.den == o.den:
            return True
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        # equal elements may hash differently when not in normal form; only
        # constants are hashed consistently
        if self.den.is_constant() and self.num.is_constant():
            return hash(self.num.constant_value() / self.den.constant_value())
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num.terms)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def substitute(self, images: list[MPoly]) -> "RatFunc":
        return RatFunc(self.field, self.num.substitute(images), self.den.substitute(images))

    def format(self) -> str:
        n = format_mpoly(self.num, self.field.names, self.field.base)
        if self.den.is_constant() and self.den.constant_value() == 1:
            return n
        d = format_mpoly(self.den, self.field.names, self.field.base)
        if len(self.num.terms) > 1 or (n.startswith("-") and "/" in n):
            n = f"({n})"
        if len(self.den.terms) > 1 or "*" in d or "/" in d or "^" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return self.format()


def _normalize(num: MPoly, den: MPoly):
    base = num.base
    if not num.terms:
        return num, MPoly.constant(base, num.nvars, 1)
    nv = num.nvars
    if nv:
        lo = tuple(min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents()))
        if any(lo):
            neg = tuple(-x for x in lo)
            num = num.shift_exponents(neg)
            den = den.shift_exponents(neg)
    if nv == 1 and not den.is_constant():
        g = dense_gcd(num.dense(), den.dense(), base.zero)
        if len(g) > 1:
            num = MPoly.from_dense(base, dense_divmod(num.dense(), g, base.zero)[0])
            den = MPoly.from_dense(base, dense_divmod(den.dense(), g, base.zero)[0])
    _, lc = den.leading()
    if lc != 1:
        inv = 1 / lc if not hasattr(lc, "inverse") else lc.inverse()
        num = num * inv
        den = den * inv
    return num, den


def format_coeff(c, base) -> str:
    return base.format(c)


def format_mpoly(p: MPoly, names, base) -> str:
    """Render a polynomial in the literal grammar: terms ``coef*name^e*...``."""
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        cs = base.format(c)
        neg = False
        if base.characteristic == 0 and c < 0:
            neg = True
            cs = base.format(-c)
        if mono:
            if cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
        else:
            body = cs
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out
