"""The diamond operation a ⋄ b and n-th power generators on multi-valuation fixtures."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .fields.upoly import PoleError, RationalFn, UPoly
from .intr import EvalSet, Verdict, check_membership, is_unit_valued
from .newton import minval_poly
from .values import INF


@dataclass
class MonicSingularData:
    n: int
    d: object
    f: UPoly
    g: UPoly
    h1: UPoly
    h2: UPoly
    V: list  # valued fields with v(d) = 0
    W: list  # (valued field, uniformizer) pairs
    name: str = ""

    @property
    def K(self):
        return self.f.ring

    def valuations(self):
        """Every listed valued field, monic side first."""
        return list(self.V) + [w for w, _ in self.W]


class ValidationError(ValueError):
    def __init__(self, report):
        super().__init__("hypotheses failed: " + ", ".join(k for k, v in report["checks"].items() if not v))
        self.report = report


def validate(data: MonicSingularData, samples: int = 50, seed: int = 0) -> dict:
    """Check every hypothesis; the report maps check names to booleans."""
    checks = {}
    n, d = data.n, data.d
    checks["n >= 1"] = n >= 1
    checks["f monic of degree n"] = data.f.is_monic() and data.f.degree == n
    checks["h1 monic of degree n"] = data.h1.is_monic() and data.h1.degree == n
    checks["deg h2 < n"] = data.h2.degree < n
    checks["deg g = n"] = data.g.degree == n
    checks["lc(g) = d"] = data.g.degree >= 0 and data.g.lc() == d
    combo = data.f * data.h1 * d + data.g * data.h2
    for i, F in enumerate(data.V):
        tag = f"V[{i}]"
        checks[f"{tag}: v(d) = 0"] = F.valuation(d) == F.group.zero()
        checks[f"{tag}: f unit-valued"] = _uv(data.f, F)
        checks[f"{tag}: g unit-valued"] = _uv(data.g, F)
        checks[f"{tag}: d*f*h1 + g*h2 unit-valued"] = _uv(combo, F)
    rnd = random.Random(seed)
    for i, (F, pi) in enumerate(data.W):
        tag = f"W[{i}]"
        wd, wpi = F.valuation(d), F.valuation(pi)
        checks[f"{tag}: 0 < w(d) < n*w(pi)"] = wd is not INF and wd.sign() > 0 and wd < wpi * n
        checks[f"{tag}: d*f*h1 + g*h2 unit-valued"] = _uv(combo, F)
        checks[f"{tag}: tail (envelope)"] = tail_by_envelope(data.g, d, n, F)
        checks[f"{tag}: tail (samples)"] = _tail_samples(data.g, d, n, F, rnd, samples)
    return {"checks": checks, "passed": all(checks.values()), "seed": seed}


def _uv(f: UPoly, F) -> bool:
    try:
        return is_unit_valued(f, F)
    except ValueError:
        return False


def tail_by_envelope(g: UPoly, d, n: int, F) -> bool:
    """w(g(a)) = w(d a^n) for every a with w(a) < 0, decided from the envelope.

    The leading term strictly dominates at gamma < 0 exactly when no lattice
    value lies in [theta*, 0) with theta* = min_i (w(b_i) - w(d)) / (n - i).
    """
    if g.degree != n or g.lc() != d:
        return False
    wd = F.valuation(d)
    theta = None
    for i, c in enumerate(g.coeffs[:-1]):
        if c != 0:
            t = (F.valuation(c) - wd) / (n - i)
            if theta is None or t < theta:
                theta = t
    if theta is None:
        return True
    zero = F.group.zero()
    if theta >= zero:
        return True
    if F.lattice.contains(theta):
        return False
    return F.lattice.point_in_open(theta, zero) is None


def _tail_samples(g, d, n, F, rnd, samples) -> bool:
    step = [b if b.sign() > 0 else -b for b in F.lattice.basis]
    if not step:
        return True
    for _ in range(samples):
        gamma = F.random_value(rnd, -4, 0)
        if gamma.sign() >= 0:
            gamma = -step[-1]
        a = F.random_element_of_value(rnd, gamma)
        if F.valuation(g(a)) != F.valuation(d * a ** n):
            return False
    return True


def theta(data: MonicSingularData) -> RationalFn:
    return RationalFn(data.f * data.d, data.g)


def theta_membership(data: MonicSingularData, depth: int = 8) -> list[Verdict]:
    th = theta(data)
    return [check_membership(th, F, EvalSet.whole_field(), depth) for F in data.valuations()]


def diamond(data: MonicSingularData, a, b):
    """a ⋄ b = θ(a/b) b^n h1(a/b) + b^n h2(a/b)."""
    if b == 0:
        raise ZeroDivisionError("b must be nonzero")
    r = a / b
    gr = data.g(r)
    if gr == 0:
        raise PoleError(f"a/b = {r} is a pole of theta")
    bn = b ** data.n
    return data.d * data.f(r) / gr * bn * data.h1(r) + bn * data.h2(r)


def _poly_of_fn(p: UPoly, phi: RationalFn) -> RationalFn:
    acc = RationalFn(UPoly(p.ring))
    for c in reversed(p.coeffs):
        acc = acc * phi + c
    return acc


def diamond_fn(data: MonicSingularData, phi: RationalFn, psi: RationalFn) -> RationalFn:
    r = phi / psi
    th_r = _poly_of_fn(data.f * data.d, r) / _poly_of_fn(data.g, r)
    psin = psi ** data.n
    return th_r * psin * _poly_of_fn(data.h1, r) + psin * _poly_of_fn(data.h2, r)


def power_generator(data: MonicSingularData, phis: Sequence[RationalFn]) -> RationalFn:
    """ρ with u(ρ(a)) = n^{m-1} min_i u(φ_i(a)) for every listed valuation u."""
    if len(phis) < 2:
        raise ValueError("need at least two functions")
    if any(p.is_zero() for p in phis):
        raise ValueError("zero function")
    rho = diamond_fn(data, phis[0], phis[1])
    for k, phi in enumerate(phis[2:]):
        rho = diamond_fn(data, rho, phi ** (data.n ** (k + 1)))
    return rho


def power_exponent(data: MonicSingularData, m: int) -> int:
    return data.n ** (m - 1)


def approx_construct(f: UPoly, d, V: list, W: list, name: str = "") -> MonicSingularData:
    """g = d(f - f(0)) + f(0), h1 = f - f(0), h2 = f(0)."""
    problems = []
    if not f.is_monic():
        problems.append("f is not monic")
    n = f.degree
    f0 = f.coeff(0)
    for i, F in enumerate(V):
        if f0 == 0 or F.valuation(f0).sign() != 0:
            problems.append(f"f(0) is not a unit for V[{i}]")
        if not F.valuation(d - 1).sign() > 0:
            problems.append(f"v(d - 1) > 0 fails for V[{i}]")
    for i, (F, pi) in enumerate(W):
        if f0 == 0 or F.valuation(f0).sign() != 0:
            problems.append(f"f(0) is not a unit for W[{i}]")
        wd = F.valuation(d)
        if not (wd is not INF and wd.sign() > 0 and wd < F.valuation(pi) * n):
            problems.append(f"0 < w(d) < n*w(pi) fails for W[{i}]")
    if problems:
        raise ValueError("; ".join(problems))
    g, h1, h2 = approx_polys(f, d)
    data = MonicSingularData(n, d, f, g, h1, h2, list(V), list(W), name)
    if not identity_holds(data):
        raise AssertionError("d*f*h1 + g*h2 identity failed")
    return data


def approx_polys(f: UPoly, d):
    """(g, h1, h2) = (d(f - f(0)) + f(0), f - f(0), f(0))."""
    c0 = UPoly(f.ring, [f.coeff(0)])
    h1 = f - c0
    return h1 * d + c0, h1, c0


def identity_holds(data: MonicSingularData) -> bool:
    """d f h1 + g h2 == d f^2 - d f(0)^2 + f(0)^2 as polynomials."""
    return _identity(data.f, data.d, data.g, data.h1, data.h2)


def approx_identity_holds(f: UPoly, d) -> bool:
    """The identity for the triple built from (f, d) by :func:`approx_polys`."""
    return _identity(f, d, *approx_polys(f, d))


def _identity(f, d, g, h1, h2) -> bool:
    f0 = f.coeff(0)
    lhs = f * h1 * d + g * h2
    rhs = f * f * d + UPoly(f.ring, [f0 * f0 - d * f0 * f0])
    return (lhs - rhs).is_zero()


def check_diamond_law(data: MonicSingularData, a, b) -> bool:
    c = diamond(data, a, b)
    for F in data.valuations():
        va, vb = F.valuation(a), F.valuation(b)
        want = min(va * data.n if va is not INF else INF, vb * data.n, key=_key)
        if F.valuation(c) != want:
            return False
    return True


def _key(x):
    return _Cmp(x)


class _Cmp:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return self.x < other.x


def sample_pairs(data: MonicSingularData, count: int, seed: int = 0, max_rejects: int = 1000):
    """Random (a, b) pairs avoiding poles of θ at a/b; also returns the number skipped."""
    rnd = random.Random(seed)
    F0 = data.valuations()[0]
    out, skipped = [], 0
    while len(out) < count:
        a = F0.random_element(rnd) if rnd.random() > 0.05 else data.K.zero
        b = F0.random_element(rnd)
        if data.g(a / b) == 0:
            skipped += 1
            if skipped > max_rejects:
                raise RuntimeError("too many pole rejections")
            continue
        out.append((a, b))
    return out, skipped
