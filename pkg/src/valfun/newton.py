"""Minimum valuation functions as exact piecewise-linear maps on the hull.

For f = sum a_i x^i the map gamma -> min_i (v(a_i) + i*gamma) is the lower
envelope of the lines through the points (i, v(a_i)); it is built from the
lower convex hull of those points.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .values import INF, GroupDescriptor, GroupElement, GroupMismatch


@dataclass(frozen=True)
class PiecewiseLinear:
    """Segments left to right; segment k holds on [breakpoints[k-1], breakpoints[k]]."""

    group: GroupDescriptor
    segments: tuple  # of (slope: int, intercept: GroupElement)
    breakpoints: tuple  # of GroupElement, strictly increasing

    def __post_init__(self):
        if len(self.breakpoints) != len(self.segments) - 1:
            raise ValueError("need exactly one breakpoint between consecutive segments")

    @classmethod
    def line(cls, group: GroupDescriptor, slope: int, intercept: Optional[GroupElement] = None) -> "PiecewiseLinear":
        return cls(group, ((int(slope), intercept if intercept is not None else group.zero()),), ())

    @classmethod
    def zero(cls, group: GroupDescriptor) -> "PiecewiseLinear":
        return cls.line(group, 0)

    @property
    def slopes(self) -> list[int]:
        return [c for c, _ in self.segments]

    def _index(self, gamma: GroupElement, right: bool = False) -> int:
        k = 0
        for b in self.breakpoints:
            if b < gamma or (right and b == gamma):
                k += 1
            else:
                break
        return k

    def __call__(self, gamma: GroupElement) -> GroupElement:
        return evaluate(self, gamma)

    def is_zero(self) -> bool:
        return len(self.segments) == 1 and self.segments[0][0] == 0 and self.segments[0][1].sign() == 0

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "segments": [{"slope": c, "intercept": b.to_json()} for c, b in self.segments],
            "breakpoints": [b.to_json() for b in self.breakpoints],
        }

    def describe(self) -> str:
        lines = []
        for k, (c, b) in enumerate(self.segments):
            lo = "-inf" if k == 0 else str(self.breakpoints[k - 1])
            hi = "+inf" if k == len(self.segments) - 1 else str(self.breakpoints[k])
            lines.append(f"[{lo}, {hi}]: {c}*g + {b}")
        return "\n".join(lines)


def evaluate(m: PiecewiseLinear, gamma: GroupElement) -> GroupElement:
    c, b = m.segments[m._index(gamma)]
    return gamma * c + b


def slopes_at(m: PiecewiseLinear, alpha: GroupElement) -> tuple[int, int]:
    """One-sided slopes (left, right) at alpha."""
    return m.segments[m._index(alpha)][0], m.segments[m._index(alpha, right=True)][0]


def canonical(group, segments, breakpoints) -> PiecewiseLinear:
    segs, bps = [segments[0]], []
    for seg, bp in zip(segments[1:], breakpoints):
        if seg[0] == segs[-1][0]:
            continue  # continuity makes equal slopes collinear
        segs.append(seg)
        bps.append(bp)
    return PiecewiseLinear(group, tuple(segs), tuple(bps))


def _cross(o, a, b) -> int:
    (oi, ov), (ai, av), (bi, bv) = o, a, b
    return ((bv - ov) * (ai - oi) - (av - ov) * (bi - oi)).sign()


def envelope(points: Sequence[tuple[int, GroupElement]], group: GroupDescriptor) -> PiecewiseLinear:
    """Lower envelope of the lines gamma -> v + i*gamma for points (i, v)."""
    pts = sorted((i, v) for i, v in points if v is not INF)
    if not pts:
        raise ValueError("the zero polynomial has no minimum valuation function")
    hull: list = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    hull.reverse()  # highest index first = leftmost segment
    segs = tuple((i, v) for i, v in hull)
    bps = tuple((hull[k + 1][1] - hull[k][1]) / (hull[k][0] - hull[k + 1][0]) for k in range(len(hull) - 1))
    return PiecewiseLinear(group, segs, bps)


def minval_poly(f, F) -> PiecewiseLinear:
    """minval of a polynomial ``f`` (a UPoly over F's field)."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no minimum valuation function")
    return envelope([(i, F.valuation(c)) for i, c in enumerate(f.coeffs) if c != 0], F.group)


def minval_rat(phi, F) -> PiecewiseLinear:
    if phi.is_zero():
        raise ValueError("the zero function has no minimum valuation function")
    return sub(minval_poly(phi.num, F), minval_poly(phi.den, F))


def _merged(m1: PiecewiseLinear, m2: PiecewiseLinear) -> list:
    if m1.group != m2.group:
        raise GroupMismatch(f"{m1.group} vs {m2.group}")
    out = []
    for b in list(m1.breakpoints) + list(m2.breakpoints):
        if not any(b == o for o in out):
            out.append(b)
    out.sort(key=_SortKey)
    return out


class _SortKey:
    __slots__ = ("g",)

    def __init__(self, g):
        self.g = g

    def __lt__(self, other):
        return self.g < other.g


def _sample(bps: list, k: int, group) -> GroupElement:
    """A point strictly inside the k-th interval cut out by bps."""
    if not bps:
        return group.zero()
    if k == 0:
        return bps[0] - group.unit()
    if k == len(bps):
        return bps[-1] + group.unit()
    return (bps[k - 1] + bps[k]) / 2


def _combine(m1, m2, sign: int) -> PiecewiseLinear:
    bps = _merged(m1, m2)
    segs = []
    for k in range(len(bps) + 1):
        x = _sample(bps, k, m1.group)
        c1, b1 = m1.segments[m1._index(x)]
        c2, b2 = m2.segments[m2._index(x)]
        segs.append((c1 + sign * c2, b1 + b2 if sign > 0 else b1 - b2))
    return canonical(m1.group, segs, bps)


def add(m1: PiecewiseLinear, m2: PiecewiseLinear) -> PiecewiseLinear:
    return _combine(m1, m2, 1)


def sub(m1: PiecewiseLinear, m2: PiecewiseLinear) -> PiecewiseLinear:
    return _combine(m1, m2, -1)


def pl_min(m1: PiecewiseLinear, m2: PiecewiseLinear) -> PiecewiseLinear:
    bps = _merged(m1, m2)
    # add crossing points inside each interval
    cuts = list(bps)
    for k in range(len(bps) + 1):
        x = _sample(bps, k, m1.group)
        c1, b1 = m1.segments[m1._index(x)]
        c2, b2 = m2.segments[m2._index(x)]
        if c1 != c2:
            g = (b2 - b1) / (c1 - c2)
            if (k == 0 or bps[k - 1] < g) and (k == len(bps) or g < bps[k]):
                cuts.append(g)
    cuts.sort(key=_SortKey)
    segs = []
    for k in range(len(cuts) + 1):
        x = _sample(cuts, k, m1.group)
        s1 = m1.segments[m1._index(x)]
        s2 = m2.segments[m2._index(x)]
        segs.append(s1 if x * s1[0] + s1[1] <= x * s2[0] + s2[1] else s2)
    return canonical(m1.group, segs, cuts)


def negative_point(m: PiecewiseLinear, lo: Optional[GroupElement], hi: Optional[GroupElement] = None):
    """Some gamma in [lo, hi] (None = unbounded) with m(gamma) < 0, else None."""
    group = m.group
    cands = [b for b in m.breakpoints if (lo is None or b >= lo) and (hi is None or b <= hi)]
    for end in (lo, hi):
        if end is not None:
            cands.append(end)
    for g in cands:
        if m(g).sign() < 0:
            return g
    # unbounded ends: follow the outer rays
    if hi is None:
        c, b = m.segments[-1]
        start = max([lo] + list(m.breakpoints), key=_SortKey) if lo is not None else (
            m.breakpoints[-1] if m.breakpoints else group.zero())
        if c < 0:
            g = max(start, b / (-c), key=_SortKey) + group.unit()
            return g
        if c == 0 and b.sign() < 0:
            return start
    if lo is None:
        c, b = m.segments[0]
        start = min([hi] + list(m.breakpoints), key=_SortKey) if hi is not None else (
            m.breakpoints[0] if m.breakpoints else group.zero())
        if c > 0:
            return min(start, b / (-c), key=_SortKey) - group.unit()
        if c == 0 and b.sign() < 0:
            return start
    return None


def nonneg_on_ray(m: PiecewiseLinear, start: Optional[GroupElement] = None):
    """(True, None) if m >= 0 on [start, inf) (default start 0), else (False, witness gamma)."""
    g = negative_point(m, start if start is not None else m.group.zero(), None)
    return (g is None, g)
