"""Dense univariate polynomials and rational functions in ``x``.

Coefficients live in any exact field object exposing ``zero``, ``one`` and
``__call__`` for coercion (Q, F_p, F_{p^k}, or a rational function field).
"""
from __future__ import annotations

from typing import Sequence


def _inv(c):
    return c.inverse() if hasattr(c, "inverse") else 1 / c


class UPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs: Sequence = ()):
        cs = [ring(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, ring) -> "UPoly":
        return cls(ring, [0, 1])

    @classmethod
    def const(cls, ring, c) -> "UPoly":
        return cls(ring, [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _lift(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly(self.ring, [other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly(self.ring, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return UPoly(self.ring)
        out = [self.ring.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UPoly(self.ring, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        return len(a) == len(b) and all(x == y for x, y in zip(a, b))

    def __hash__(self):
        return hash(len(self.coeffs))

    def __call__(self, a):
        acc = self.ring.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def divmod(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return UPoly(self.ring), self
        inv = _inv(other.lc())
        q = [self.ring.zero] * (dq + 1)
        m = len(other.coeffs)
        for d in range(dq, -1, -1):
            c = r[d + m - 1] * inv
            q[d] = c
            if c != 0:
                for j, y in enumerate(other.coeffs):
                    r[d + j] = r[d + j] - c * y
        return UPoly(self.ring, q), UPoly(self.ring, r[: m - 1])

    def compose(self, other: "UPoly") -> "UPoly":
        acc = UPoly(self.ring)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def substitute_affine(self, scale, shift) -> "UPoly":
        """The polynomial f(scale*x + shift)."""
        return self.compose(UPoly(self.ring, [shift, scale]))

    def scale_var(self, t) -> "UPoly":
        """f(t*x), computed coefficientwise."""
        out, p = [], self.ring.one
        for c in self.coeffs:
            out.append(c * p)
            p = p * t
        return UPoly(self.ring, out)

    def map_coeffs(self, fn, ring=None) -> "UPoly":
        return UPoly(ring if ring is not None else self.ring, [fn(c) for c in self.coeffs])

    def monic(self) -> "UPoly":
        inv = _inv(self.lc())
        return UPoly(self.ring, [c * inv for c in self.coeffs])

    def derivative(self) -> "UPoly":
        return UPoly(self.ring, [c * i for i, c in enumerate(self.coeffs)][1:])

    def format(self, var: str = "x", fmt=None) -> str:
        fmt = fmt or (lambda c: self.ring.format(c) if hasattr(self.ring, "format") else str(c))
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            neg = False
            cs = fmt(c)
            if cs.startswith("-") and not cs.startswith("-(") and " " not in cs:
                neg, cs = True, cs[1:]
            elif " " in cs and i:
                cs = f"({cs})"
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return self.format()


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over the coefficient field (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a if a.is_zero() else a.monic()


def _wrap(s: str, strict: bool = False) -> str:
    """Parenthesize unless s is a single factor."""
    bare = s.lstrip("-")
    if " " in bare or (strict and any(ch in bare for ch in "*/^")) or (strict and s.startswith("-")):
        return f"({s})"
    return s


class PoleError(ZeroDivisionError):
    pass


class RationalFn:
    """phi = num/den with num, den in K[x]; no normalization is attempted."""

    __slots__ = ("num", "den")

    def __init__(self, num: UPoly, den: UPoly | None = None):
        if den is None:
            den = UPoly(num.ring, [1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def reduced(self) -> "RationalFn":
        """Cancel the gcd of numerator and denominator."""
        g = poly_gcd(self.num, self.den)
        if g.degree <= 0:
            return self
        return RationalFn(self.num.divmod(g)[0], self.den.divmod(g)[0])

    def _lift(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, UPoly):
            return RationalFn(other)
        return RationalFn(UPoly(self.ring, [other]))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        return RationalFn(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFn(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return 0

    def __call__(self, a):
        d = self.den(a)
        if d == 0:
            raise PoleError(f"pole at {a}")
        return self.num(a) / d

    def compose(self, other: UPoly) -> "RationalFn":
        return RationalFn(self.num.compose(other), self.den.compose(other))

    def format(self, var: str = "x") -> str:
        n = self.num.format(var)
        if self.den.degree == 0 and self.den.lc() == 1:
            return n
        d = self.den.format(var)
        return f"{_wrap(n)}/{_wrap(d, strict=True)}"

    def __repr__(self):
        return self.format()
