"""Totally ordered value groups and their divisible hulls.

Two families are supported:

* ``LexInt(r)`` -- Z^r ordered lexicographically (``LexInt(1)`` is Z);
* ``QuadIrr()`` -- Z[sqrt 2] inside the reals, a dense rank-one group.

Elements of the divisible hull carry rational coordinates; ``in_lattice``
tells whether they belong to the group itself.  For ``QuadIrr`` the pair
``(a, b)`` stands for ``a + b*sqrt(2)`` and signs are decided exactly.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class GroupMismatch(ValueError):
    pass


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # "lex" or "quad"
    rank: int = 1

    def __post_init__(self):
        if self.kind not in ("lex", "quad"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "lex" and self.rank < 1:
            raise ValueError("lex groups need rank >= 1")
        if self.kind == "quad" and self.rank != 1:
            raise ValueError("quad_sqrt2 has rank 1")

    @property
    def dim(self) -> int:
        """Number of rational coordinates of an element."""
        return self.rank if self.kind == "lex" else 2

    @property
    def is_divisible(self) -> bool:
        return False

    def element(self, *coords) -> "GroupElement":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if self.kind == "quad" and len(coords) == 1:
            coords = (coords[0], 0)
        return GroupElement(self, coords)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.dim)

    def min_positive(self) -> Optional["GroupElement"]:
        if self.kind == "lex":
            return GroupElement(self, (0,) * (self.rank - 1) + (1,))
        return None

    def unit(self) -> "GroupElement":
        """A fixed positive element, used for stepping along rays."""
        if self.kind == "lex":
            return self.min_positive()
        return GroupElement(self, (1, 0))

    def to_json(self) -> dict:
        if self.kind == "lex":
            return {"group": "lex", "rank": self.rank}
        return {"group": "quad_sqrt2"}

    @classmethod
    def from_json(cls, data: dict) -> "GroupDescriptor":
        kind = data["group"]
        if kind == "lex":
            return LexInt(int(data.get("rank", 1)))
        if kind == "quad_sqrt2":
            return QuadIrr()
        raise ValueError(f"unknown group {kind!r}")

    def __str__(self):
        return f"LexInt({self.rank})" if self.kind == "lex" else "QuadIrr(sqrt2)"


def LexInt(rank: int = 1) -> GroupDescriptor:
    return GroupDescriptor("lex", rank)


def QuadIrr() -> GroupDescriptor:
    return GroupDescriptor("quad", 1)


def has_minimal_positive(g: GroupDescriptor) -> bool:
    return g.kind == "lex"


def quad_sign(a, b) -> int:
    """Exact sign of a + b*sqrt(2) for rationals a, b."""
    if a >= 0 and b >= 0:
        return 0 if (a == 0 and b == 0) else 1
    if a <= 0 and b <= 0:
        return -1
    d = a * a - 2 * b * b
    if a > 0:
        return (d > 0) - (d < 0)
    return (d < 0) - (d > 0)


def quad_floor(a, b) -> int:
    """Exact floor of a + b*sqrt(2)."""
    n = math.floor(float(a) + float(b) * math.sqrt(2))
    while quad_sign(a - n, b) < 0:
        n -= 1
    while quad_sign(a - (n + 1), b) >= 0:
        n += 1
    return n


class _Infinity:
    """The valuation of zero.  Compares above every group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("valfun-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def sign(self) -> int:
        return 1

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF")
        return self


INF = _Infinity()


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class GroupElement:
    """Element of the divisible hull of a value group."""

    __slots__ = ("group", "coords")

    def __init__(self, group: GroupDescriptor, coords: Iterable):
        coords = tuple(_frac(c) for c in coords)
        if len(coords) != group.dim:
            raise ValueError(f"{group} elements have {group.dim} coordinates, got {len(coords)}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, key, value):
        raise AttributeError("GroupElement is immutable")

    @property
    def in_lattice(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def _check(self, other: "GroupElement"):
        if other.group != self.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    def __add__(self, other):
        if other is INF:
            return INF
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        if other is INF:
            raise ArithmeticError("x - INF")
        self._check(other)
        return GroupElement(self.group, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return GroupElement(self.group, [-a for a in self.coords])

    def __mul__(self, q):
        q = _frac(q)
        return GroupElement(self.group, [q * a for a in self.coords])

    __rmul__ = __mul__

    def __truediv__(self, q):
        return self * (1 / _frac(q))

    def sign(self) -> int:
        if self.group.kind == "quad":
            return quad_sign(*self.coords)
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def _cmp(self, other) -> int:
        if other is INF:
            return -1
        self._check(other)
        if self.group.kind == "lex":
            a, b = self.coords, other.coords
            return (a > b) - (a < b)
        return quad_sign(self.coords[0] - other.coords[0], self.coords[1] - other.coords[1])

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return False
        return self.group == other.group and self.coords == other.coords

    def __hash__(self):
        return hash((self.group, self.coords))

    def __float__(self):
        if self.group.kind == "quad":
            return float(self.coords[0]) + float(self.coords[1]) * math.sqrt(2)
        return float(self.coords[0])

    def __repr__(self):
        return f"GroupElement({self})"

    def __str__(self):
        if self.group.kind == "quad":
            a, b = self.coords
            if b == 0:
                return str(a)
            if a == 0:
                return f"{b}*sqrt2"
            return f"{a}{'+' if b > 0 else '-'}{abs(b)}*sqrt2"
        if self.group.rank == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def to_json(self) -> list:
        return [str(c) for c in self.coords]


def element_from_json(group: GroupDescriptor, data) -> GroupElement:
    if isinstance(data, (str, int)):
        data = [data]
    return group.element(tuple(_frac(c) for c in data))


def compare(a: GroupElement, b: GroupElement) -> Ordering:
    if a.group != b.group:
        raise GroupMismatch(f"{a.group} vs {b.group}")
    return Ordering(a._cmp(b))


def scale(q, a: GroupElement) -> GroupElement:
    return a * q


def gmin(values):
    """Minimum over group elements and INF."""
    best = INF
    for v in values:
        if v < best:
            best = v
    return best


def find_positive_below(g: GroupDescriptor, threshold: GroupElement, search_bound: int = 20) -> Optional[GroupElement]:
    """Smallest lattice element e with 0 < e < threshold, searched with
    coefficients bounded by ``search_bound``; None if there is none."""
    if threshold.sign() <= 0:
        raise ValueError("threshold must be positive")
    if g.kind == "lex":
        e = g.min_positive()
        return e if e < threshold else None
    best = None
    for b in range(-search_bound, search_bound + 1):
        a = _least_a_positive(b)
        if abs(a) > search_bound:
            continue
        e = g.element(a, b)
        if e < threshold and (best is None or e < best):
            best = e
    return best


def _least_a_positive(b: int) -> int:
    # least integer a with a + b*sqrt2 > 0
    if b == 0:
        return 1
    r = math.isqrt(2 * b * b)
    return -r if b > 0 else r + 1


# --- lattices generated by finitely many hull elements ---------------------


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _row_hnf(rows: list[list[int]]):
    """Integer row echelon form with transform: returns (H, T) with
    H = T*rows, H in echelon form with positive pivots and T unimodular."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    H = [list(r) for r in rows]
    T = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][col]))
            H[r], H[piv] = H[piv], H[r]
            T[r], T[piv] = T[piv], T[r]
            done = True
            for i in range(r + 1, m):
                if H[i][col]:
                    q = H[i][col] // H[r][col]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    T[i] = [x - q * y for x, y in zip(T[i], T[r])]
                    if H[i][col]:
                        done = False
            if done:
                break
        if any(H[i][col] for i in range(r, m)):
            if H[r][col] < 0:
                H[r] = [-x for x in H[r]]
                T[r] = [-x for x in T[r]]
            r += 1
    return H[:r], T[:r]


class NotInSpan(ValueError):
    pass


class Lattice:
    """The subgroup of the hull generated by finitely many elements.

    Used as the value image of a concrete field: it knows membership,
    exponent vectors realizing a value, and how to find lattice points in
    open intervals.
    """

    def __init__(self, group: GroupDescriptor, gens: Sequence[GroupElement]):
        self.group = group
        self.gens = tuple(gens)
        den = 1
        for g in self.gens:
            for c in g.coords:
                den = _lcm(den, c.denominator)
        self._den = den
        rows = [[int(c * den) for c in g.coords] for g in self.gens]
        if rows:
            H, T = _row_hnf(rows)
        else:
            H, T = [], []
        self.basis = [group.element([Fraction(x, den) for x in h]) for h in H]
        self._transform = T
        self.rank = len(self.basis)
        if group.kind == "quad" and self.rank == 1 and self.basis[0].sign() < 0:
            self.basis = [-self.basis[0]]
            self._transform = [[-x for x in T[0]]]
        if group.kind == "quad" and self.rank == 2 and self.basis[0].sign() < 0:
            self.basis[0] = -self.basis[0]
            self._transform[0] = [-x for x in self._transform[0]]

    @property
    def is_discrete(self) -> bool:
        return self.group.kind == "lex" or self.rank <= 1

    def min_positive(self) -> Optional[GroupElement]:
        if not self.is_discrete or self.rank == 0:
            return None
        return self.basis[-1]

    def coords(self, x: GroupElement) -> Optional[tuple]:
        """Rational coordinates of x in the lattice basis, None outside the span."""
        if self.rank == 0:
            return () if x.sign() == 0 else None
        if self.group.kind == "lex":
            n = []
            resid = list(x.coords)
            for b in self.basis:
                p = next(i for i, c in enumerate(b.coords) if c != 0)
                if any(resid[i] != 0 for i in range(p)):
                    return None
                q = resid[p] / b.coords[p]
                n.append(q)
                resid = [r - q * c for r, c in zip(resid, b.coords)]
            if any(resid):
                return None
            return tuple(n)
        a, b = x.coords
        if self.rank == 1:
            wa, wb = self.basis[0].coords
            if a * wb != b * wa:
                return None
            return (a / wa,) if wa else (b / wb,)
        (p, q), (r, s) = self.basis[0].coords, self.basis[1].coords
        det = p * s - q * r
        return ((a * s - b * r) / det, (p * b - q * a) / det)

    def contains(self, x: GroupElement) -> bool:
        n = self.coords(x)
        return n is not None and all(c.denominator == 1 for c in n)

    def from_coords(self, n) -> GroupElement:
        out = self.group.zero()
        for c, b in zip(n, self.basis):
            if c:
                out = out + b * c
        return out

    def exponents(self, x: GroupElement) -> Optional[list[int]]:
        """Integer combination of the generators equal to x, or None."""
        n = self.coords(x)
        if n is None or any(c.denominator != 1 for c in n):
            return None
        e = [0] * len(self.gens)
        for c, row in zip(n, self._transform):
            c = int(c)
            for i, t in enumerate(row):
                e[i] += c * t
        return e

    def point_in_open(self, lo: Optional[GroupElement], hi: Optional[GroupElement]) -> Optional[GroupElement]:
        """A lattice element strictly between lo and hi (None = infinite end)."""
        if lo is not None and hi is not None and lo >= hi:
            return None
        if self.rank == 0:
            z = self.group.zero()
            ok = (lo is None or lo < z) and (hi is None or z < hi)
            return z if ok else None
        if self.is_discrete:
            p = None if lo is None else self.coords(lo)
            q = None if hi is None else self.coords(hi)
            if (lo is not None and p is None) or (hi is not None and q is None):
                raise NotInSpan("interval end outside the span of the value lattice")
            n = _lex_point(p, q, self.rank)
            return None if n is None else self.from_coords(n)
        return self._dense_point(lo, hi)

    def _dense_point(self, lo, hi):
        b1, b2 = self.basis
        if lo is None and hi is None:
            return self.group.zero()
        if lo is not None and hi is not None:
            e = self.positive_below(hi - lo)
        else:
            e = b1
        if lo is not None:
            k = _quad_ratio_floor(lo, e) + 1
        else:
            k = -_quad_ratio_floor(-hi, e) - 1
        return e * k

    def positive_below(self, threshold: GroupElement) -> Optional[GroupElement]:
        """Some lattice element e with 0 < e < threshold (None if impossible)."""
        if threshold.sign() <= 0:
            raise ValueError("threshold must be positive")
        if self.rank == 0:
            return None
        if self.is_discrete:
            e = self.min_positive()
            return e if e < threshold else None
        b1, b2 = self.basis
        bound = 1
        while True:
            for n2 in range(-bound, bound + 1):
                # least n1 with n1*b1 + n2*b2 > 0
                n1 = _quad_ratio_floor(-(b2 * n2), b1) + 1
                e = b1 * n1 + b2 * n2
                if e < threshold:
                    return e
            bound *= 2


def _quad_ratio_floor(x: GroupElement, e: GroupElement) -> int:
    """floor(x / e) for quad elements with e > 0."""
    a, b = x.coords
    c, d = e.coords
    norm = c * c - 2 * d * d
    ra = (a * c - 2 * b * d) / norm
    rb = (b * c - a * d) / norm
    return quad_floor(ra, rb)


def _lex_point(p, q, k):
    """Integer vector strictly between p and q in lex order on Q^k."""
    if k == 0:
        return None
    p1 = None if p is None else p[0]
    q1 = None if q is None else q[0]
    if p1 is None and q1 is None:
        return (0,) * k
    if p1 is None:
        n = math.ceil(q1) - 1
    else:
        n = math.floor(p1) + 1
    if q1 is None or n < q1:
        return (n,) + (0,) * (k - 1)
    if k == 1:
        return None
    # no integer strictly inside; use an integral end coordinate
    if p1 is not None and p1.denominator == 1:
        if q1 is not None and p1 == q1:
            rest = _lex_point(p[1:], q[1:], k - 1)
        else:
            rest = _lex_point(p[1:], None, k - 1)
        if rest is not None:
            return (int(p1),) + rest
    if q1 is not None and q1.denominator == 1 and (p1 is None or q1 > p1):
        rest = _lex_point(None, q[1:], k - 1)
        if rest is not None:
            return (int(q1),) + rest
    return None
