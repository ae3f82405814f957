"""Prüfer/Bézout classification of rings of integer-valued rational functions
over a valuation domain, plus the constructive lemmas behind it."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .fields.coeffs import QQ, ExtField, PrimeField, RationalField, is_prime
from .fields.mpoly import FracField
from .fields.upoly import RationalFn, UPoly
from .fields.valued import UnsupportedResidueField, residue_roots
from .intr import EvalSet, is_unit_valued, _value_at
from .localpoly import local_poly
from .newton import minval_poly, minval_rat, negative_point, pl_min, slopes_at, sub
from .values import INF, GroupDescriptor, GroupElement, LexInt, QuadIrr, has_minimal_positive

RESIDUE_KINDS = ("finite", "rationals", "function_field", "algclosed")


@dataclass(frozen=True)
class DomainDescriptor:
    residue_kind: str
    group: GroupDescriptor
    q: Optional[int] = None  # order of the finite field (also the base of a function field)

    def __post_init__(self):
        if self.residue_kind not in RESIDUE_KINDS:
            raise ValueError(f"unknown residue kind {self.residue_kind!r}")
        if self.residue_kind in ("finite", "function_field") and not self.q:
            raise ValueError("finite residue fields need their order q")

    @property
    def m_principal(self) -> bool:
        return has_minimal_positive(self.group)

    def residue_field(self):
        """A concrete residue field, or None for the symbolic algebraically closed case."""
        if self.residue_kind == "algclosed":
            return None
        if self.residue_kind == "rationals":
            return QQ
        base = finite_field(self.q)
        if self.residue_kind == "finite":
            return base
        return FracField(base, ["c"])

    def label(self) -> str:
        r = {"finite": f"F_{self.q}", "rationals": "Q", "function_field": f"F_{self.q}(c)",
             "algclosed": "algebraically closed"}[self.residue_kind]
        return f"residue {r}, group {self.group}"


def finite_field(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return PrimeField(p) if k == 1 else ExtField.of_degree(p, k)


def parse_residue(spec: str) -> tuple[str, Optional[int]]:
    """``finite:q``, ``rationals``, ``function_field:q`` or ``algclosed``."""
    kind, _, arg = spec.partition(":")
    aliases = {"q": "rationals", "qq": "rationals", "rational": "rationals", "ff": "function_field"}
    kind = aliases.get(kind.lower(), kind.lower())
    if kind not in RESIDUE_KINDS:
        raise ValueError(f"unknown residue kind {spec!r}")
    return kind, (int(arg) if arg else None)


@dataclass
class Classification:
    descriptor: DomainDescriptor
    prufer: bool
    bezout: bool
    reasons: list = field(default_factory=list)
    unit_valued_witness: Optional[UPoly] = None
    pair_witness: Optional[tuple] = None

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor.label(),
            "prufer": self.prufer,
            "bezout": self.bezout,
            "reasons": self.reasons,
            "monic_unit_valued": None if self.unit_valued_witness is None else self.unit_valued_witness.format(),
            "rootless_pair": None if self.pair_witness is None else [p.format() for p in self.pair_witness],
        }


def classify(d: DomainDescriptor) -> Classification:
    R = d.residue_field()
    algclosed = R is None
    reasons = []
    prufer = (not algclosed) or d.m_principal
    if not algclosed:
        reasons.append("residue field is not algebraically closed: Int^R(V) is Prüfer")
    if d.m_principal:
        reasons.append("maximal ideal is principal: Int^R(V) is Prüfer and Bézout")
    if algclosed and not d.m_principal:
        reasons.append("algebraically closed residue field and non-principal maximal ideal: not Prüfer")
    pair = None if algclosed else find_rootless_pair(R)
    bezout = d.m_principal or pair is not None
    if pair is not None:
        reasons.append(f"rootless polynomials of coprime degrees {pair[0].degree} and {pair[1].degree}: Bézout")
    elif not d.m_principal and prufer:
        reasons.append("no rootless pair of coprime degrees found and maximal ideal not principal: not Bézout")
    elif not bezout:
        reasons.append("not Prüfer, hence not Bézout")
    uv = None if algclosed else find_rootless(R, 2) or find_rootless(R, 3)
    return Classification(d, prufer, bezout, reasons, uv, pair)


def _monic_candidates(R, n: int):
    if isinstance(R, (PrimeField, ExtField)):
        elems = list(R.elements())
        for low in itertools.product(elems, repeat=n):
            yield UPoly(R, list(reversed(low)) + [R.one])
        return
    if isinstance(R, RationalField):
        for c in itertools.count(1):
            yield UPoly(R, [c] + [0] * (n - 1) + [1])
    if isinstance(R, FracField):
        if R.base.is_finite:
            for p in _monic_candidates(R.base, n):
                yield UPoly(R, [R(c) for c in p.coeffs])
        else:
            for c in itertools.count(1):
                yield UPoly(R, [c] + [0] * (n - 1) + [1])


def find_rootless(R, n: int, limit: int = 10_000) -> Optional[UPoly]:
    """First monic degree-n polynomial over R without roots in R (canonical order)."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    if R is None or n == 1:
        return None
    for p in itertools.islice(_monic_candidates(R, n), limit):
        if not residue_roots(p):
            return p
    return None


PAIR_DEGREES = ((2, 3), (2, 5), (3, 4))


def find_rootless_pair(R) -> Optional[tuple]:
    if R is None:
        return None
    for a, b in PAIR_DEGREES:
        p, q = find_rootless(R, a), find_rootless(R, b)
        if p is not None and q is not None:
            return p, q
    return None


def find_monic_unit_valued(F, n: int) -> Optional[UPoly]:
    r = find_rootless(F.residue_field, n)
    if r is None:
        return None
    f = UPoly(F.K, [F.lift(c) for c in r.coeffs])
    assert is_unit_valued(f, F)
    return f


# --- valuation lemma ----------------------------------------------------------


class SlopeConditionError(ValueError):
    pass


class RootsNotRealizable(ValueError):
    pass


class GroupTooCoarse(ValueError):
    pass


@dataclass
class LemmaWitness:
    a: object
    alpha: GroupElement
    minval: GroupElement
    value: GroupElement
    raised: bool  # True: v(phi(a)) > minval, False: v(phi(a)) < minval
    h: object


def _taylor_at(f: UPoly, b, u) -> UPoly:
    """Coefficients of f(b*(u + y)) in y."""
    return f.compose(UPoly(f.ring, [b * u, b]))


def _splits(loc: UPoly, roots) -> bool:
    return sum(m for _, m in roots) == loc.degree


def valuation_lemma_witness(phi: RationalFn, alpha: GroupElement, F) -> LemmaWitness:
    """a with v(a) = alpha and v(phi(a)) on the far side of minval_phi(alpha)."""
    m = minval_rat(phi, F)
    c1, c2 = slopes_at(m, alpha)
    if c1 == c2:
        raise SlopeConditionError(f"minval is linear at {alpha} (slope {c1}); no slope change")
    if c1 < c2:
        w = valuation_lemma_witness(phi.inverse(), alpha, F)
        value = F.valuation(phi(w.a))
        assert value < m(alpha)
        return LemmaWitness(w.a, alpha, m(alpha), value, False, w.h)
    if not F.lattice.contains(alpha):
        raise RootsNotRealizable(f"{alpha} is not a value of the field")
    b = F.element_of_value(alpha)
    lf = local_poly(phi.num, b, F).loc
    lg = local_poly(phi.den, b, F).loc
    rf, rg = residue_roots(lf), residue_roots(lg)
    if not _splits(lf, rf) or not _splits(lg, rg):
        raise RootsNotRealizable("local polynomials do not split over the residue field; extend it first")
    mult_g = {}
    for r, e in rg:
        mult_g[r] = e
    choice = None
    for r, e in rf:
        if r == 0:
            continue
        e2 = next((m2 for r2, m2 in rg if r2 == r), 0)
        if e > e2:
            choice = (r, e, e2)
            break
    if choice is None:
        raise RootsNotRealizable("no nonzero root with larger multiplicity in the numerator")
    xi, e, e2 = choice
    u = F.lift(xi)
    bound = INF
    for poly, mult in ((phi.num, e), (phi.den, e2)):
        T = _taylor_at(poly, b, u)
        # the y^mult coefficient has value exactly minval; lower ones lie above it
        scale = F.valuation(T.coeff(mult))
        for k in range(mult):
            c = T.coeff(k)
            if c != 0:
                mu = F.valuation(c) - scale
                if mu < bound:
                    bound = mu
    if bound is INF:
        h = _smallest_positive_generator(F)
    else:
        threshold = bound / e
        if threshold.sign() <= 0:
            raise GroupTooCoarse("tail bound is not positive")
        gamma_h = F.lattice.positive_below(threshold)
        if gamma_h is None:
            raise GroupTooCoarse(f"group too coarse: no value in (0, {threshold})")
        h = F.element_of_value(gamma_h)
    a = b * (u + h)
    value = F.valuation(phi(a))
    if not value > m(alpha):
        raise AssertionError("valuation lemma construction failed verification")
    return LemmaWitness(a, alpha, m(alpha), value, True, h)


def _smallest_positive_generator(F):
    best = None
    for name, v in zip(F.names, F.values) if hasattr(F, "names") else []:
        if v.sign() > 0 and (best is None or v < best[1]):
            best = (name, v)
    if best is None:
        pos = F.lattice.min_positive()
        if pos is None:
            raise GroupTooCoarse("no positive value available")
        return F.element_of_value(pos)
    return F.generator(best[0])


# --- principality obstruction -------------------------------------------------


@dataclass
class Obstruction:
    refuted: bool
    reason: str
    gamma: Optional[GroupElement] = None
    witness: object = None


def principality_obstruction(gens: Sequence[RationalFn], phi: RationalFn, F, E: EvalSet = None,
                             samples: int = 50, seed: int = 0) -> Obstruction:
    """Necessary-condition test for the ideal equality (gens) = (phi)."""
    if F.residue_field.is_finite:
        raise ValueError("the obstruction test needs an infinite residue field")
    if not gens or any(g.is_zero() for g in gens) or phi.is_zero():
        raise ValueError("all functions must be nonzero")
    E = E or EvalSet.whole_ring()
    rng = E.value_range(F.group)
    env = minval_rat(gens[0], F)
    for g in gens[1:]:
        env = pl_min(env, minval_rat(g, F))
    mphi = minval_rat(phi, F)
    diff = sub(env, mphi)
    for d in (diff, sub(mphi, env)):
        gamma = negative_point(d, rng.lo, rng.hi)
        if gamma is not None:
            return Obstruction(True, "minimum valuation functions differ", gamma=gamma)
    # perturbation probe at breakpoints: a = b(u + h) near local roots
    bps = []
    for fn in list(gens) + [phi]:
        for poly in (fn.num, fn.den):
            for bp in minval_poly(poly, F).breakpoints:
                if rng.contains(bp) and F.lattice.contains(bp) and not any(bp == o for o in bps):
                    bps.append(bp)
    steps = [s for s in (F.lattice.basis) if s.sign() > 0] or [-s for s in F.lattice.basis]
    hvals = []
    base = steps[-1] if F.lattice.is_discrete else steps[0]
    for k in range(1, 4):
        hvals.append(base * k)
        if not F.lattice.is_discrete:
            small = F.lattice.positive_below(base / (k + 1))
            if small is not None:
                hvals.append(small)
    for bp in bps:
        b = F.element_of_value(bp)
        roots = []
        for fn in list(gens) + [phi]:
            for poly in (fn.num, fn.den):
                try:
                    roots += [r for r, _ in residue_roots(local_poly(poly, b, F).loc) if r != 0]
                except (UnsupportedResidueField, NotImplementedError):
                    continue
        for r in roots:
            u = F.lift(r)
            for hv in hvals:
                a = b * (u + F.element_of_value(hv))
                w = _compare_at(gens, phi, a, F)
                if w is not None:
                    return Obstruction(True, "valuation mismatch at a perturbed local root", gamma=bp, witness=a)
    rnd = random.Random(seed)
    from .intr import sample_element

    for _ in range(samples):
        a = sample_element(F, E, rnd)
        w = _compare_at(gens, phi, a, F)
        if w is not None:
            return Obstruction(True, "valuation mismatch at a sampled point", gamma=F.valuation(a), witness=a)
    return Obstruction(False, "inconclusive: necessary conditions hold")


def _compare_at(gens, phi, a, F):
    vp = _value_at(phi, a, F)
    vals = [_value_at(g, a, F) for g in gens]
    if vp is None or any(v is None for v in vals):
        return None
    best = INF
    for v in vals:
        if v < best:
            best = v
    return a if vp != best else None
