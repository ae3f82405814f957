"""Exact coefficient fields: F_p, F_{p^k} and Q.

Field objects are callables that coerce integers (and rationals, where that
makes sense) into elements.  F_p and F_{p^k} elements are small value
classes with operator overloading; Q uses ``fractions.Fraction`` directly.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GFp:
    __slots__ = ("field", "v")

    def __init__(self, field: "PrimeField", v: int):
        self.field = field
        self.v = v % field.p

    def __int__(self):
        return self.v

    def _coerce(self, other):
        if isinstance(other, GFp):
            if other.field.p != self.field.p:
                raise TypeError("mixed characteristics")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.field.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFp(self.field, self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFp(self.field, self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFp(self.field, o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFp(self.field, self.v * o)

    __rmul__ = __mul__

    def __neg__(self):
        return GFp(self.field, -self.v)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return GFp(self.field, pow(self.v, -1, self.field.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        o %= self.field.p
        if o == 0:
            raise ZeroDivisionError("division by 0 in F_p")
        return GFp(self.field, self.v * pow(o, -1, self.field.p))

    def __rtruediv__(self, other):
        return GFp(self.field, self._coerce(other)) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GFp(self.field, pow(self.v, n, self.field.p))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.field.p == 0

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = GFp(self, 0)
        self.one = GFp(self, 1)

    characteristic = property(lambda self: self.p)
    order = property(lambda self: self.p)
    is_finite = True

    def __call__(self, x) -> GFp:
        if isinstance(x, GFp):
            return x
        if isinstance(x, Fraction):
            return GFp(self, x.numerator) / x.denominator
        return GFp(self, int(x))

    def elements(self) -> Iterator[GFp]:
        return (GFp(self, i) for i in range(self.p))

    def nonzero_elements(self) -> Iterator[GFp]:
        return (GFp(self, i) for i in range(1, self.p))

    def format(self, e) -> str:
        return str(e.v)

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F_{self.p}"


def _pmod_mul(a, b, modulus, p):
    """Product of coefficient tuples reduced modulo a monic modulus."""
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1 if k else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * modulus[j]) % p
    return tuple(prod[:k])


class GFq:
    __slots__ = ("field", "c")

    def __init__(self, field: "ExtField", c):
        self.field = field
        self.c = tuple(x % field.p for x in c)

    def _coerce(self, other):
        if isinstance(other, GFq):
            if other.field != self.field:
                raise TypeError("mixed extension fields")
            return other.c
        if isinstance(other, GFp):
            other = other.v
        if isinstance(other, int):
            return (other % self.field.p,) + (0,) * (self.field.k - 1)
        if isinstance(other, Fraction):
            p = self.field.p
            return (other.numerator * pow(other.denominator, -1, p) % p,) + (0,) * (self.field.k - 1)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFq(self.field, [a + b for a, b in zip(self.c, o)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFq(self.field, [a - b for a, b in zip(self.c, o)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFq(self.field, [b - a for a, b in zip(self.c, o)])

    def __neg__(self):
        return GFq(self.field, [-a for a in self.c])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFq(self.field, _pmod_mul(self.c, o, self.field.modulus, self.field.p))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * GFq(self.field, o).inverse()

    def __rtruediv__(self, other):
        return GFq(self.field, self._coerce(other)) / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.c))

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return self.field.format(self)


def _poly_divisible(a, b, p) -> bool:
    """True if monic-or-not b divides a over F_p (coefficient lists, low first)."""
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] * inv % p
        if c:
            for j in range(db + 1):
                a[d - db + j] = (a[d - db + j] - c * b[j]) % p
    return not any(a[:db])


def monic_polys(p: int, degree: int):
    """Monic coefficient tuples (low first) of a given degree, canonical order."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def is_irreducible_mod_p(coeffs, p: int) -> bool:
    k = len(coeffs) - 1
    if k <= 0:
        return False
    for d in range(1, k // 2 + 1):
        for m in monic_polys(p, d):
            if _poly_divisible(coeffs, m, p):
                return False
    return True


def first_irreducible(p: int, k: int):
    for m in monic_polys(p, k):
        if is_irreducible_mod_p(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")


class ExtField:
    """F_{p^k} = F_p[z]/(modulus).  ``modulus`` lists coefficients low first."""

    def __init__(self, p: int, modulus, gen_name: str = "z"):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not is_irreducible_mod_p(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.modulus = modulus
        self.k = len(modulus) - 1
        self.gen_name = gen_name
        self.zero = GFq(self, (0,) * self.k)
        self.one = GFq(self, (1,) + (0,) * (self.k - 1))

    characteristic = property(lambda self: self.p)
    order = property(lambda self: self.p ** self.k)
    is_finite = True

    @classmethod
    def of_degree(cls, p: int, k: int, gen_name: str = "z") -> "ExtField":
        return cls(p, first_irreducible(p, k), gen_name)

    @property
    def gen(self) -> GFq:
        if self.k == 1:
            return GFq(self, (-self.modulus[0],))
        return GFq(self, (0, 1) + (0,) * (self.k - 2))

    def __call__(self, x) -> GFq:
        if isinstance(x, GFq):
            return x
        if isinstance(x, GFp):
            x = x.v
        if isinstance(x, Fraction):
            return self(x.numerator) / self(x.denominator)
        if isinstance(x, (tuple, list)):
            return GFq(self, tuple(x) + (0,) * (self.k - len(x)))
        return GFq(self, (int(x),) + (0,) * (self.k - 1))

    def elements(self) -> Iterator[GFq]:
        for low in itertools.product(range(self.p), repeat=self.k):
            yield GFq(self, tuple(reversed(low)))

    def nonzero_elements(self) -> Iterator[GFq]:
        return (e for e in self.elements() if e)

    def format(self, e) -> str:
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = e.c[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        if not terms:
            return "0"
        return terms[0] if len(terms) == 1 else "(" + " + ".join(terms) + ")"

    def to_json(self) -> dict:
        return {"kind": "ext", "p": self.p, "modulus": list(self.modulus), "gen": self.gen_name}

    def __eq__(self, other):
        return isinstance(other, ExtField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("Fq", self.p, self.modulus))

    def __repr__(self):
        return f"F_{self.p}^{self.k}"


class RationalField:
    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0
    order = None
    is_finite = False

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def elements(self) -> Iterator[Fraction]:
        yield Fraction(0)
        yield from self.nonzero_elements()

    def nonzero_elements(self) -> Iterator[Fraction]:
        return (Fraction(n) for n in itertools.count(1))

    def format(self, e) -> str:
        return str(e)

    def to_json(self) -> dict:
        return {"kind": "rationals"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def coefficient_field_from_json(data: dict):
    kind = data["kind"]
    if kind == "prime":
        return PrimeField(int(data["p"]))
    if kind == "ext":
        return ExtField(int(data["p"]), data["modulus"], data.get("gen", "z"))
    if kind == "rationals":
        return QQ
    raise ValueError(f"unknown coefficient field {kind!r}")
