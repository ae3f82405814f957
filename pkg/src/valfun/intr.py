"""Integer-valued rational functions: membership, pointed residues, certificates.

``check_membership`` is a semi-decision procedure.  Away from the
breakpoints of the numerator and denominator envelopes the value of
phi(a) is read off the envelope exactly.  At a lattice breakpoint gamma the
elements of value gamma are b*u with v(u) = 0; residues of u that are not
roots of either local polynomial again give the envelope value, and at the
remaining residues we substitute x <- b*(u + y) with v(y) > 0 and recurse.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .fields.upoly import PoleError, RationalFn, UPoly
from .fields.valued import NotAUnit, UnsupportedResidueField, residue_roots
from .localpoly import attain_minval_rat, local_poly
from .newton import PiecewiseLinear, minval_poly, minval_rat, negative_point
from .values import INF, GroupElement, NotInSpan


# --- evaluation sets -------------------------------------------------------


@dataclass(frozen=True)
class EvalSet:
    kind: str  # "ring" | "field" | "finite" | "window"
    elements: tuple = ()
    lo: Optional[GroupElement] = None
    hi: Optional[GroupElement] = None
    allow_finite_exceptions: bool = False
    exceptions: tuple = ()

    def __post_init__(self):
        if self.kind not in ("ring", "field", "finite", "window"):
            raise ValueError(f"unknown evaluation set kind {self.kind!r}")
        if self.kind == "finite" and not self.elements:
            raise ValueError("a finite evaluation set needs at least one element")
        if self.kind == "window" and self.lo is not None and self.hi is not None and self.hi < self.lo:
            raise ValueError("window needs lo <= hi")

    @classmethod
    def whole_ring(cls, **kw) -> "EvalSet":
        return cls("ring", **kw)

    @classmethod
    def whole_field(cls, **kw) -> "EvalSet":
        return cls("field", **kw)

    @classmethod
    def finite(cls, elements, **kw) -> "EvalSet":
        return cls("finite", elements=tuple(elements), **kw)

    @classmethod
    def window(cls, lo, hi, **kw) -> "EvalSet":
        return cls("window", lo=lo, hi=hi, **kw)

    def contains_zero(self) -> bool:
        return self.kind in ("ring", "field") or (self.kind == "window" and self.hi is None)

    def value_range(self, group) -> "_Range":
        if self.kind == "ring":
            return _Range(group.zero(), True, None, False)
        if self.kind == "field":
            return _Range(None, False, None, False)
        if self.kind == "window":
            return _Range(self.lo, True, self.hi, True)
        raise ValueError("finite sets have no value range")

    def contains(self, a, F) -> bool:
        if self.kind == "finite":
            return any(a == e for e in self.elements)
        if a == 0:
            return self.contains_zero()
        return self.value_range(F.group).contains(F.valuation(a))

    def is_exception(self, a) -> bool:
        return any(a == e for e in self.exceptions)


@dataclass(frozen=True)
class _Range:
    lo: Optional[GroupElement]
    lo_closed: bool
    hi: Optional[GroupElement]
    hi_closed: bool

    def contains(self, g) -> bool:
        if g is INF:
            return self.hi is None
        if self.lo is not None and (g < self.lo or (g == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (g > self.hi or (g == self.hi and not self.hi_closed)):
            return False
        return True


# --- verdicts --------------------------------------------------------------


@dataclass
class Verdict:
    kind: str  # "yes" | "no" | "unknown"
    certificate: Optional[dict] = None
    witness: object = None
    witness_value: object = None
    reason: str = ""
    unresolved: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"yes": 0, "no": 1, "unknown": 2}[self.kind]

    def __bool__(self):
        return self.kind == "yes"


def Yes(certificate) -> Verdict:
    return Verdict("yes", certificate=certificate)


def No(witness, value, reason="") -> Verdict:
    return Verdict("no", witness=witness, witness_value=value, reason=reason)


def Unknown(reason, unresolved=()) -> Verdict:
    return Verdict("unknown", reason=reason, unresolved=list(unresolved))


# --- membership ------------------------------------------------------------


def _value_at(phi: RationalFn, a, F):
    """v(phi(a)); None at a pole."""
    try:
        return F.valuation(phi(a))
    except PoleError:
        return None


def field_roots(f: UPoly, F):
    """Roots of f in K when we can find them, else None."""
    if f.degree <= 0:
        return []
    if f.degree == 1:
        return [-f.coeffs[0] / f.coeffs[1]]
    try:
        return [r for r, _ in residue_roots(f)]
    except (UnsupportedResidueField, NotImplementedError):
        return None


def _positive_steps(F):
    pos = [b if b.sign() > 0 else -b for b in F.lattice.basis]
    return pos


def _pole_witness(phi: RationalFn, F, E: EvalSet, tries: int = 40):
    """An element of E near a pole of phi with negative value, if any pole lies in E's closure."""
    poles = field_roots(phi.den, F)
    if not poles:
        return None
    steps = _positive_steps(F)
    if not steps:
        return None
    step = steps[-1] if F.lattice.is_discrete else steps[0]
    for p in poles:
        if E.kind != "finite" and not (E.contains(p, F) or p == 0):
            continue
        for k in range(1, tries + 1):
            a = p + F.element_of_value(step * k)
            if not E.contains(a, F) or E.is_exception(a):
                continue
            v = _value_at(phi, a, F)
            if v is not None and v.sign() < 0:
                return a, v
    return None


class _Search:
    def __init__(self, F, E: EvalSet, depth: int):
        self.F = F
        self.E = E
        self.max_depth = depth
        self.unresolved: list = []
        self.unsupported: Optional[str] = None

    def witness(self, a, phi0):
        """Return (a, v) if a is a genuine witness for the original function."""
        if self.E.is_exception(a):
            return None
        v = _value_at(phi0, a, self.F)
        if v is None:
            return None if self.E.allow_finite_exceptions else (a, None)
        return (a, v) if v.sign() < 0 else None

    def run(self, psi: RationalFn, rng: _Range, include_zero: bool, embed, phi0, depth: int, trace: list):
        """Search for a witness among elements y with v(y) in rng (plus y = 0).

        ``embed`` maps y to the original variable.  Returns a witness pair or
        None; appends certificate data to ``trace``.
        """
        F = self.F
        node = {"range": _range_json(rng), "checks": []}
        trace.append(node)
        if include_zero:
            w = self.witness(embed(F.K.zero), phi0)
            if w is not None:
                return w
        num_env = minval_poly(psi.num, F)
        den_env = minval_poly(psi.den, F)
        m = minval_rat(psi, F)
        node["minval"] = m.to_json()
        cuts = []
        for b in list(num_env.breakpoints) + list(den_env.breakpoints):
            if rng.contains(b) and not any(b == c for c in cuts):
                cuts.append(b)
        for end, closed in ((rng.lo, rng.lo_closed), (rng.hi, rng.hi_closed)):
            if end is not None and closed and not any(end == c for c in cuts):
                cuts.append(end)
        cuts.sort()
        # open pieces between consecutive cuts: the envelope value is exact there
        edges = [rng.lo] + cuts + [rng.hi]
        for k in range(len(edges) - 1):
            lo, hi = edges[k], edges[k + 1]
            if lo is not None and hi is not None and not lo < hi:
                continue
            gamma = _negative_lattice_point(m, lo, hi, F)
            if gamma is not None:
                a = embed(F.element_of_value(gamma))
                w = self.witness(a, phi0)
                if w is not None:
                    return w
        # lattice cut points
        for gamma in cuts:
            if not F.lattice.contains(gamma):
                continue
            w = self._at_point(psi, m, gamma, embed, phi0, depth, node)
            if w is not None:
                return w
        return None

    def _at_point(self, psi, m, gamma, embed, phi0, depth, node):
        F = self.F
        b = F.element_of_value(gamma)
        mg = m(gamma)
        check = {"gamma": gamma.to_json(), "minval": mg.to_json(), "refined": []}
        node["checks"].append(check)
        try:
            loc_num = local_poly(psi.num, b, F).loc
            loc_den = local_poly(psi.den, b, F).loc
        except UnsupportedResidueField as exc:
            self.unsupported = str(exc)
            self.unresolved.append(gamma)
            return None
        if mg.sign() < 0:
            a = attain_minval_rat([psi], gamma, F)
            if a is not None:
                w = self.witness(embed(a), phi0)
                if w is not None:
                    return w
        try:
            den_roots = [r for r, _ in residue_roots(loc_den) if r != 0]
            if mg.sign() < 0:
                num_roots = [r for r, _ in residue_roots(loc_num) if r != 0]
                if F.residue_field.is_finite:
                    roots = [r for r in F.residue_field.nonzero_elements()]
                else:
                    roots = den_roots + [r for r in num_roots if not any(r == q for q in den_roots)]
            else:
                roots = den_roots
        except (UnsupportedResidueField, NotImplementedError) as exc:
            self.unsupported = str(exc)
            self.unresolved.append(gamma)
            return None
        for r in roots:
            check["refined"].append(F.residue_field.format(r) if hasattr(F.residue_field, "format") else str(r))
            if depth <= 0:
                self.unresolved.append(gamma)
                continue
            u = F.lift(r)
            shift = UPoly(F.K, [b * u, b])  # x = b*u + b*y
            sub = RationalFn(psi.num.compose(shift), psi.den.compose(shift))
            inner = _Range(F.group.zero(), False, None, False)
            child: list = []
            check.setdefault("children", child)
            w = self.run(sub, inner, True, lambda y, e=embed, bu=b * u: e(bu + b * y), phi0, depth - 1, child)
            if w is not None:
                return w
        return None


def _range_json(r: _Range) -> dict:
    return {
        "lo": None if r.lo is None else r.lo.to_json(),
        "lo_closed": r.lo_closed,
        "hi": None if r.hi is None else r.hi.to_json(),
        "hi_closed": r.hi_closed,
    }


def _negative_lattice_point(m: PiecewiseLinear, lo, hi, F):
    """A lattice gamma strictly inside (lo, hi) with m(gamma) < 0."""
    if lo is not None and hi is not None:
        mid = (lo + hi) / 2
    elif lo is not None:
        mid = lo + F.group.unit()
    elif hi is not None:
        mid = hi - F.group.unit()
    else:
        mid = F.group.zero()
    c, beta = m.segments[m._index(mid)]
    # m = c*gamma + beta on the piece; find where it is negative
    if c == 0:
        if beta.sign() >= 0:
            return None
        a, z = lo, hi
    else:
        root = -beta / c
        if c > 0:
            a, z = lo, root if hi is None or root < hi else hi
        else:
            a, z = root if lo is None or root > lo else lo, hi
    try:
        return F.lattice.point_in_open(a, z)
    except NotInSpan:
        return None


def check_membership(phi: RationalFn, F, E: EvalSet, depth: int = 8) -> Verdict:
    """Decide (soundly, possibly Unknown) whether phi maps E into the valuation ring."""
    if phi.is_zero():
        raise ValueError("zero function")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    phi = phi.reduced()
    if E.kind == "finite":
        return _check_finite(phi, F, E)
    pw = _pole_witness(phi, F, E)
    if pw is not None:
        return No(pw[0], pw[1], reason="near a pole")
    search = _Search(F, E, depth)
    trace: list = []
    rng = E.value_range(F.group)
    w = search.run(phi, rng, E.contains_zero(), lambda y: y, phi, depth, trace)
    if w is not None:
        a, v = w
        return No(a, v, reason="pole" if v is None else "negative value")
    if search.unresolved:
        reason = search.unsupported or f"refinement depth {depth} exhausted"
        return Unknown(reason, search.unresolved)
    return Yes({"depth": depth, "trace": trace})


def _check_finite(phi, F, E) -> Verdict:
    values = []
    for a in E.elements:
        if E.is_exception(a):
            continue
        v = _value_at(phi, a, F)
        if v is None:
            if E.allow_finite_exceptions:
                continue
            return No(a, None, reason="pole")
        if v.sign() < 0:
            return No(a, v, reason="negative value")
        values.append(str(v))
    return Yes({"evaluated": values})


# --- sampling --------------------------------------------------------------


def sample_value(F, rng_range: _Range, rnd: random.Random, spread: int = 4):
    for _ in range(200):
        g = F.random_value(rnd, -spread, spread)
        if rng_range.contains(g):
            return g
    return rng_range.lo if rng_range.lo is not None else F.group.zero()


def sample_element(F, E: EvalSet, rnd: random.Random):
    if E.kind == "finite":
        return rnd.choice(E.elements)
    if E.contains_zero() and rnd.random() < 0.05:
        return F.K.zero
    g = sample_value(F, E.value_range(F.group), rnd)
    return F.random_element_of_value(rnd, g)


def sample_falsify(phi: RationalFn, F, E: EvalSet, budget: int, seed: int = 0):
    """Random search for a with v(phi(a)) < 0; None when the budget runs out."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    rnd = random.Random(seed)
    for _ in range(budget):
        a = sample_element(F, E, rnd)
        if E.is_exception(a):
            continue
        v = _value_at(phi, a, F)
        if v is not None and v.sign() < 0:
            return a
    return None


# --- pointed ideals --------------------------------------------------------


def pointed_residue(phi, a, F):
    """Residue of phi(a); requires v(phi(a)) >= 0."""
    if not isinstance(phi, RationalFn):
        phi = RationalFn(phi) if isinstance(phi, UPoly) else RationalFn(UPoly(F.K, [phi]))
    val = phi(a)
    v = F.valuation(val)
    if v is INF or v.sign() > 0:
        return F.residue_field.zero
    if v.sign() < 0:
        raise NotAUnit(f"phi(a) has negative value {v}")
    return F.residue(val)


def in_pointed_max_ideal(phi, a, F) -> bool:
    return pointed_residue(phi, a, F) == 0


# --- localization certificate ---------------------------------------------


@dataclass
class LocalizationCertificate:
    h: UPoly
    f: UPoly
    g: UPoly
    delta: GroupElement
    eta: GroupElement
    n: int
    m: int
    t: object
    report: dict

    @property
    def passed(self) -> bool:
        return self.report["passed"]


def _lattice_denominator(F, x: GroupElement) -> int:
    n = F.lattice.coords(x)
    if n is None:
        raise NotInSpan(f"{x} is outside the span of the value lattice")
    out = 1
    for c in n:
        out = out * c.denominator // math.gcd(out, c.denominator)
    return out


def localization_certificate(phi: RationalFn, F, E: EvalSet, samples: int = 200, seed: int = 0) -> LocalizationCertificate:
    """Build h = x^{mn}/t + 1 so that f/h and g/h are integer-valued on E."""
    phi = phi.reduced()
    g0 = phi.den(F.K.zero)
    if g0 == 0:
        raise PoleError("0 is a pole of phi")
    f = UPoly(F.K, [c / g0 for c in phi.num.coeffs])
    g = UPoly(F.K, [c / g0 for c in phi.den.coeffs])
    if f.coeff(0) != 0 and F.valuation(f.coeff(0)).sign() < 0:
        raise ValueError("v(phi(0)) < 0")
    zero = F.group.zero()
    delta = zero
    for poly in (f, g):
        for i, c in enumerate(poly.coeffs):
            if i and c != 0:
                bound = -F.valuation(c) / i
                if bound > delta:
                    delta = bound
    pos = _positive_steps(F)
    if not pos:
        raise ValueError("value image is trivial")
    step = pos[-1] if F.lattice.is_discrete else pos[0]
    eta = delta + step / 2
    if F.lattice.contains(eta):
        eta = delta + step / 4
    n = _lattice_denominator(F, eta)
    m = max(f.degree, g.degree, 1)
    t = F.element_of_value(eta * (m * n))
    h = UPoly(F.K, [1] + [0] * (m * n - 1) + [1 / t])
    report = certificate_report(f, g, h, F, E, samples, seed)
    return LocalizationCertificate(h, f, g, delta, eta, n, m, t, report)


def certificate_report(f, g, h, F, E: EvalSet, samples: int, seed: int) -> dict:
    rnd = random.Random(seed)
    fh, gh = RationalFn(f, h), RationalFn(g, h)
    failures = []
    checked = 0
    pts = [F.K.zero] if E.contains_zero() else []
    pts += [sample_element(F, E, rnd) for _ in range(samples)]
    for d in pts:
        for name, fn in (("f/h", fh), ("g/h", gh)):
            v = _value_at(fn, d, F)
            if v is None or v.sign() < 0:
                failures.append({"fn": name, "at": F.format(d), "value": None if v is None else str(v)})
        checked += 1
    r0 = pointed_residue(gh, F.K.zero, F)
    ok_res = r0 != 0
    env_ok = True
    if E.kind in ("ring", "field", "window"):
        rng = E.value_range(F.group)
        for fn in (fh, gh):
            if negative_point(minval_rat(fn, F), rng.lo, rng.hi) is not None:
                env_ok = False
    return {
        "seed": seed,
        "samples": checked,
        "failures": failures,
        "residue_g_over_h_at_0": str(r0),
        "residue_nonzero": ok_res,
        "envelopes_nonnegative": env_ok,
        "passed": not failures and ok_res and env_ok,
    }


# --- unit-valued polynomials and continuity ---------------------------------


def is_unit_valued(f: UPoly, F) -> bool:
    """f(V) lies in the units of V, i.e. f mod m has no residue-field roots."""
    for c in f.coeffs:
        if F.valuation(c).sign() < 0:
            raise ValueError(f"coefficient {F.format(c)} has negative value")
    red = F.residue_poly(f)
    if red.is_zero():
        return False
    if red.degree == 0:
        return True
    return not residue_roots(red)


def continuity_probe(phi: RationalFn, a, eps: GroupElement, F, steps: int = 5, max_iter: int = 500) -> GroupElement:
    """delta such that v(phi(b) - phi(a)) > eps along b_j = a + element_of_value(delta + j*step)."""
    try:
        base = phi(a)
    except PoleError:
        raise
    pos = _positive_steps(F)
    step = pos[0]
    for k in range(max_iter):
        delta = step * k
        ok = True
        for j in range(1, steps + 1):
            b = a + F.element_of_value(delta + step * j)
            try:
                diff = phi(b) - base
            except PoleError:
                ok = False
                break
            if not F.valuation(diff) > eps:
                ok = False
                break
        if ok:
            return delta
    raise RuntimeError("continuity probe did not stabilize")
