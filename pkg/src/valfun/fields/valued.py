"""Concrete valued fields: p-adic Q and monomial valuations on k(x_1..x_n).

A ``MonomialField`` assigns a value (a hull element) to each generator and
values a polynomial by the minimum over its support.  A generator may carry
a *center* c, in which case the valuation is monomial in ``(name - c)``
instead of ``name``; this gives e.g. the (s-1)-adic valuation on Q(s,t).
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional, Sequence

from ..values import INF, GroupDescriptor, GroupElement, Lattice, LexInt, quad_sign, element_from_json
from .coeffs import QQ, ExtField, GFp, GFq, PrimeField, RationalField, coefficient_field_from_json
from .mpoly import FracField, MPoly, RatFunc
from .upoly import UPoly


class NotAUnit(ValueError):
    """Raised when a residue is requested for an element of nonzero value."""


class ValueNotInImage(ValueError):
    pass


class UnsupportedResidueField(NotImplementedError):
    pass


def _pval(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


class ValuedField:
    """Common interface; subclasses fill in the arithmetic."""

    K = None
    group: GroupDescriptor
    residue_field = None
    lattice: Lattice

    def __call__(self, x):
        return self.K(x)

    def valuation(self, e):
        raise NotImplementedError

    def residue(self, e):
        raise NotImplementedError

    def lift(self, r):
        raise NotImplementedError

    def element_of_value(self, gamma: GroupElement):
        raise NotImplementedError

    def residue_poly(self, f: UPoly) -> UPoly:
        """Reduce a polynomial whose coefficients all have value >= 0."""
        out = []
        for c in f.coeffs:
            v = self.valuation(c)
            if v is INF or v.sign() > 0:
                out.append(self.residue_field.zero)
            elif v.sign() < 0:
                raise NotAUnit(f"coefficient {c} has negative value {v}")
            else:
                out.append(self.residue(c))
        return UPoly(self.residue_field, out)

    def random_unit(self, rng: random.Random):
        r = random_residue(self.residue_field, rng, nonzero=True)
        u = self.lift(r)
        if rng.random() < 0.5:
            u = u + self.random_element(rng, positive=True)
        return u

    def random_element_of_value(self, rng: random.Random, gamma: GroupElement):
        return self.element_of_value(gamma) * self.random_unit(rng)

    def random_value(self, rng: random.Random, lo: int = -3, hi: int = 3) -> GroupElement:
        gens = self.lattice.basis
        out = self.group.zero()
        for b in gens:
            out = out + b * rng.randint(lo, hi)
        return out


class PAdicField(ValuedField):
    """Q with the p-adic valuation."""

    def __init__(self, p: int):
        self.p = p
        self.K = QQ
        self.group = LexInt(1)
        self.residue_field = PrimeField(p)
        self.lattice = Lattice(self.group, [self.group.element(1)])

    def valuation(self, e):
        e = Fraction(e)
        if e == 0:
            return INF
        return self.group.element(_pval(e.numerator, self.p) - _pval(e.denominator, self.p))

    def residue(self, e):
        e = Fraction(e)
        v = self.valuation(e)
        if v is INF or v.sign() != 0:
            raise NotAUnit(f"{e} is not a unit of V (value {v})")
        return self.residue_field(e)

    def lift(self, r) -> Fraction:
        return Fraction(r.v if isinstance(r, GFp) else int(r))

    def element_of_value(self, gamma: GroupElement) -> Fraction:
        if gamma.group != self.group or not gamma.in_lattice:
            raise ValueNotInImage(f"{gamma} is not in the value image Z")
        n = int(gamma.coords[0])
        return Fraction(self.p) ** n

    def random_element(self, rng: random.Random, positive: bool = False):
        k = rng.randint(1, 3) if positive else rng.randint(-3, 3)
        u = rng.randint(1, 40)
        w = rng.randint(1, 40)
        while u % self.p == 0:
            u += 1
        while w % self.p == 0:
            w += 1
        return Fraction(self.p) ** k * Fraction(rng.choice((-1, 1)) * u, w)

    def format(self, e) -> str:
        return str(Fraction(e))

    def to_json(self) -> dict:
        return {"kind": "padic", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PAdicField) and other.p == self.p

    def __hash__(self):
        return hash(("padic", self.p))

    def __repr__(self):
        return f"PAdic({self.p})"


class MonomialField(ValuedField):
    """k(names) with the monomial valuation given by generator values."""

    def __init__(self, coeffs, gens: Sequence, group: GroupDescriptor, centers: Optional[dict] = None):
        self.coeffs = coeffs
        self.group = group
        self.names = tuple(n for n, _ in gens)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.values = tuple(v if isinstance(v, GroupElement) else group.element(v) for _, v in gens)
        for v in self.values:
            if v.group != group:
                raise ValueError(f"generator value {v} is not in {group}")
        self.centers = {k: coeffs(c) for k, c in (centers or {}).items() if coeffs(c) != 0}
        for k in self.centers:
            if k not in self.names:
                raise ValueError(f"center given for unknown generator {k!r}")
            if self.values[self.names.index(k)].sign() == 0:
                raise ValueError("a centered generator needs nonzero value")
        self.K = FracField(coeffs, self.names)
        self.lattice = Lattice(group, [v for v in self.values])
        self.zero_names = tuple(n for n, v in zip(self.names, self.values) if v.sign() == 0)
        self._zero_idx = [i for i, v in enumerate(self.values) if v.sign() == 0]
        self._nz_idx = [i for i, v in enumerate(self.values) if v.sign() != 0]
        nz_lattice = Lattice(group, [self.values[i] for i in self._nz_idx])
        self.residue_supported = nz_lattice.rank == len(self._nz_idx)
        self.residue_field = FracField(coeffs, self.zero_names) if self.zero_names else coeffs
        den = 1
        for v in self.values:
            for c in v.coords:
                den = den * c.denominator // math.gcd(den, c.denominator)
        self._den = den
        self._ivals = [tuple(int(c * den) for c in v.coords) for v in self.values]
        self._shift_images = None
        if self.centers:
            imgs = []
            for i, n in enumerate(self.names):
                e = [0] * len(self.names)
                e[i] = 1
                p = MPoly.monomial(coeffs, len(self.names), e)
                if n in self.centers:
                    p = p + MPoly.constant(coeffs, len(self.names), self.centers[n])
                imgs.append(p)
            self._shift_images = imgs
            self._unshift_images = [
                img - MPoly.constant(coeffs, len(self.names), 2 * self.centers[n]) if n in self.centers else img
                for n, img in zip(self.names, imgs)
            ]

    # -- helpers ---------------------------------------------------------

    def _local(self, p: MPoly) -> MPoly:
        """Rewrite p in the shifted coordinates (name - center)."""
        if self._shift_images is None or not p.terms:
            return p
        return p.substitute(self._shift_images)

    def _less(self, a, b) -> bool:
        if self.group.kind == "lex":
            return a < b
        return quad_sign(a[0] - b[0], a[1] - b[1]) < 0

    def _term_value(self, e):
        out = [0] * self.group.dim
        for k, iv in zip(e, self._ivals):
            if k:
                for j, c in enumerate(iv):
                    out[j] += k * c
        return tuple(out)

    def _initial(self, p: MPoly):
        best, init = None, []
        for e, c in p.terms.items():
            val = self._term_value(e)
            if best is None or self._less(val, best):
                best, init = val, [(e, c)]
            elif val == best:
                init.append((e, c))
        return best, init

    def _poly_value(self, p: MPoly):
        best = None
        for e in p.terms:
            val = self._term_value(e)
            if best is None or self._less(val, best):
                best = val
        return best

    def _to_group(self, ival) -> GroupElement:
        return self.group.element([Fraction(c, self._den) for c in ival])

    # -- interface -------------------------------------------------------

    def valuation(self, e):
        e = self.K(e)
        if not e.num.terms:
            return INF
        a = self._poly_value(self._local(e.num))
        b = self._poly_value(self._local(e.den))
        return self._to_group(tuple(x - y for x, y in zip(a, b)))

    def residue(self, e):
        e = self.K(e)
        if not e.num.terms:
            raise NotAUnit("0 is not a unit of V")
        vn, init_n = self._initial(self._local(e.num))
        vd, init_d = self._initial(self._local(e.den))
        if vn != vd:
            raise NotAUnit(f"{e.format()} is not a unit of V (value {self._to_group(tuple(x - y for x, y in zip(vn, vd)))})")
        if not self.residue_supported:
            raise UnsupportedResidueField("residues need Q-independent nonzero generator values")
        if not self.zero_names:
            return init_n[0][1] / init_d[0][1]
        R = self.residue_field
        nz = len(self.zero_names)

        def restrict(init):
            return MPoly(self.coeffs, nz, {tuple(ex[i] for i in self._zero_idx): c for ex, c in init})

        return RatFunc(R, restrict(init_n), restrict(init_d))

    def lift(self, r):
        if not self.zero_names:
            return self.K(r)
        return self.K(self.residue_field(r))

    def generator(self, name: str) -> RatFunc:
        """The element whose value is the value of ``name`` (shifted if centered)."""
        g = self.K.gen(name)
        if name in self.centers:
            g = g - self.centers[name]
        return g

    def element_of_value(self, gamma: GroupElement) -> RatFunc:
        if gamma.group != self.group:
            raise ValueNotInImage(f"{gamma} is not in {self.group}")
        ex = self.lattice.exponents(gamma)
        if ex is None:
            basis = ", ".join(str(b) for b in self.lattice.basis) or "0"
            raise ValueNotInImage(f"{gamma} is not in the value image (lattice spanned by {basis})")
        out = self.K.one
        for name, k in zip(self.names, ex):
            if k:
                out = out * self.generator(name) ** k
        return out

    def adjoin_value(self, gamma: GroupElement, name: str) -> "MonomialField":
        if name in self.names or (isinstance(self.coeffs, ExtField) and name == self.coeffs.gen_name):
            raise ValueError(f"name {name!r} already in use")
        gens = list(zip(self.names, self.values)) + [(name, gamma)]
        return MonomialField(self.coeffs, gens, self.group, self.centers)

    def coarsen(self, keep: int) -> "MonomialField":
        if self.group.kind != "lex":
            raise ValueError("coarsening needs a lexicographic group")
        if not 1 <= keep < self.group.rank:
            raise ValueError(f"keep must satisfy 1 <= keep < {self.group.rank}")
        g = LexInt(keep)
        gens = [(n, g.element(v.coords[:keep])) for n, v in zip(self.names, self.values)]
        centers = {k: c for k, c in self.centers.items() if gens[self.names.index(k)][1].sign() != 0}
        return MonomialField(self.coeffs, gens, g, centers)

    def random_element(self, rng: random.Random, positive: bool = False, terms: int = 3):
        """Small random element; with ``positive`` its value is > 0."""
        n = len(self.names)
        while True:
            num = MPoly(self.coeffs, n, {
                tuple(rng.randint(0, 2) for _ in range(n)): random_residue(self.coeffs, rng, nonzero=True)
                for _ in range(rng.randint(1, terms))
            })
            if num.is_zero():
                continue
            den = MPoly(self.coeffs, n, {
                tuple(rng.randint(0, 1) for _ in range(n)): random_residue(self.coeffs, rng, nonzero=True)
                for _ in range(rng.randint(1, 2))
            })
            if den.is_zero():
                continue
            e = RatFunc(self.K, num, den)
            if self._shift_images is not None:
                e = e.substitute(self._unshift_images)
            if not positive:
                return e
            v = self.valuation(e)
            pos = [b for b in self.lattice.basis if b.sign() > 0]
            if not pos:
                raise ValueError("value image has no positive elements")
            target = pos[-1] * rng.randint(1, 3)
            if self.lattice.rank > 1 and rng.random() < 0.5:
                target = target + pos[0]
            return e * self.element_of_value(target - v) if target.sign() > 0 else e

    def format(self, e) -> str:
        return self.K(e).format()

    def to_json(self) -> dict:
        gens = []
        for n, v in zip(self.names, self.values):
            d = {"name": n, "value": v.to_json()}
            if n in self.centers:
                d["center"] = self.coeffs.format(self.centers[n])
            gens.append(d)
        return {"kind": "monomial", "coeffs": self.coeffs.to_json(), "group": self.group.to_json(), "gens": gens}

    def __eq__(self, other):
        return (isinstance(other, MonomialField) and other.coeffs == self.coeffs and other.group == self.group
                and other.names == self.names and other.values == self.values and other.centers == self.centers)

    def __hash__(self):
        return hash((self.names, self.values))

    def __repr__(self):
        parts = ", ".join(f"v({n})={v}" for n, v in zip(self.names, self.values))
        return f"{self.coeffs!r}({','.join(self.names)}) [{parts}]"


def field_from_json(data: dict) -> ValuedField:
    kind = data["kind"]
    if kind == "padic":
        return PAdicField(int(data["p"]))
    if kind == "monomial":
        coeffs = coefficient_field_from_json(data["coeffs"])
        group = GroupDescriptor.from_json(data["group"])
        gens = [(g["name"], element_from_json(group, g["value"])) for g in data["gens"]]
        centers = {g["name"]: coeffs(Fraction(g["center"])) for g in data["gens"] if "center" in g}
        return MonomialField(coeffs, gens, group, centers)
    raise ValueError(f"unknown field kind {kind!r}")


# --- residue fields --------------------------------------------------------


def random_residue(R, rng: random.Random, nonzero: bool = False):
    while True:
        if isinstance(R, (PrimeField, ExtField)):
            r = rng.choice(list(R.elements()))
        elif isinstance(R, RationalField):
            r = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        elif isinstance(R, FracField):
            n = R.nvars
            terms = {tuple(rng.randint(0, 2) for _ in range(n)): random_residue(R.base, rng)
                     for _ in range(rng.randint(1, 3))}
            r = R.from_poly(MPoly(R.base, n, terms))
        else:
            raise UnsupportedResidueField(f"cannot sample from {R!r}")
        if not nonzero or r != 0:
            return r


def _multiplicity(g: UPoly, r) -> int:
    lin = UPoly(g.ring, [-r, 1])
    k = 0
    while True:
        q, rem = g.divmod(lin)
        if not rem.is_zero():
            return k
        g, k = q, k + 1


def residue_roots(g: UPoly) -> list:
    """Roots of g in its coefficient field, as (root, multiplicity) pairs."""
    if g.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    R = g.ring
    if isinstance(R, (PrimeField, ExtField)):
        cands = [r for r in R.elements() if g(r) == 0]
    elif isinstance(R, RationalField):
        cands = _rational_roots(g)
    elif isinstance(R, FracField):
        cands = _function_field_roots(g)
    else:
        raise UnsupportedResidueField(f"root finding over {R!r} is not supported")
    return [(r, _multiplicity(g, r)) for r in cands]


def _rational_roots(g: UPoly) -> list:
    import sympy

    den = 1
    for c in g.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in g.coeffs]
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    for p in sympy.divisors(abs(ints[0])):
        for q in sympy.divisors(abs(ints[-1])):
            if math.gcd(p, q) != 1:
                continue
            for r in (Fraction(p, q), Fraction(-p, q)):
                if g(r) == 0:
                    roots.append(r)
    return sorted(roots)


def _function_field_roots(g: UPoly) -> list:
    R = g.ring
    if R.nvars != 1:
        raise UnsupportedResidueField("root finding over function fields in several variables is not supported")
    import sympy

    s = sympy.Symbol(R.names[0])
    x = sympy.Symbol("_x")
    base = R.base
    # clear denominators: A(s, x) = g * common denominator
    common = R.poly_one()
    for c in g.coeffs:
        common = common * c.den
    cleared = []
    for c in g.coeffs:
        q = RatFunc(R, c.num * common, c.den)
        cleared.append(q)
    roots = []
    if isinstance(base, RationalField):
        expr = sum(_to_sympy(c, s) * x ** i for i, c in enumerate(cleared))
        _, factors = sympy.factor_list(sympy.together(expr), x, s)
        for fac, _mult in factors:
            P = sympy.Poly(fac, x)
            if P.degree() == 1:
                a1, a0 = P.all_coeffs()
                roots.append(_from_sympy(R, -a0 / a1, s))
    elif isinstance(base, PrimeField):
        roots = _fp_function_field_roots(g, base.p)
    else:
        raise UnsupportedResidueField(f"root finding over {R!r} is not supported")
    out = []
    for r in roots:
        if g(r) == 0 and not any(r == o for o in out):
            out.append(r)
    return out


def _to_sympy(c: RatFunc, s):
    import sympy

    def poly(p: MPoly):
        return sum(sympy.Rational(v.numerator, v.denominator) * s ** e[0] for e, v in p.terms.items())

    return poly(c.num) / poly(c.den)


def _from_sympy(R: FracField, expr, s) -> RatFunc:
    import sympy

    num, den = sympy.fraction(sympy.together(expr))

    def back(e):
        P = sympy.Poly(e, s)
        return MPoly(R.base, 1, {(m[0],): Fraction(int(c.p), int(c.q)) for m, c in P.terms()})

    return RatFunc(R, back(num), back(den))


def _fp_function_field_roots(g: UPoly, p: int) -> list:
    """Roots in F_p(s): r = c*P/Q with P | A_0, Q | A_n monic and c in F_p^*."""
    import sympy

    R = g.ring
    s = sympy.Symbol("s")
    common = R.poly_one()
    for c in g.coeffs:
        common = common * c.den
    A = [(c.num * common) for c in g.coeffs]
    # exact division by denominators
    from .mpoly import dense_divmod

    polys = []
    for a, c in zip(A, g.coeffs):
        q, rem = dense_divmod(a.dense(), c.den.dense(), R.base.zero)
        polys.append(q)
    roots = []
    k = 0
    while not polys[k]:
        k += 1
    if k:
        roots.append(R.zero)
    polys = polys[k:]
    if len(polys) == 1:
        return roots

    def divisors(coeffs):
        P = sympy.Poly([int(c.v) for c in reversed(coeffs)], s, modulus=p)
        _, facs = P.factor_list()
        divs = [sympy.Poly(1, s, modulus=p)]
        for fac, e in facs:
            divs = [d * fac ** j for d in divs for j in range(e + 1)]
        out = []
        for d in divs:
            cs = [int(c) % p for c in reversed(d.all_coeffs())]
            out.append(MPoly.from_dense(R.base, [R.base(c) for c in cs]))
        return out

    for P in divisors(polys[0]):
        for Q in divisors(polys[-1]):
            for c in R.base.nonzero_elements():
                r = RatFunc(R, P * c, Q)
                if g(r) == 0:
                    roots.append(r)
    return roots


def split_in_extension(g: UPoly, max_degree: int):
    """Smallest F_{q^m}, m <= max_degree, over which g splits; with its roots."""
    R = g.ring
    if not isinstance(R, (PrimeField, ExtField)):
        raise UnsupportedResidueField("splitting fields are only built over finite fields")
    if g.is_zero():
        raise ValueError("zero polynomial")
    k0 = 1 if isinstance(R, PrimeField) else R.k
    for m in range(1, max_degree + 1):
        if m == 1:
            E, emb = R, (lambda c: c)
        else:
            E = ExtField.of_degree(R.p, k0 * m, gen_name="w")
            emb = _embedding(R, E)
        h = UPoly(E, [emb(c) for c in g.coeffs])
        roots = residue_roots(h)
        if sum(mult for _, mult in roots) == h.degree:
            return E, roots
    return None


def _embedding(R, E: ExtField):
    if isinstance(R, PrimeField):
        return lambda c: E(c.v)
    z = next(r for r in E.elements() if UPoly(E, list(R.modulus))(r) == 0)
    powers = [E.one]
    for _ in range(R.k - 1):
        powers.append(powers[-1] * z)

    def emb(c: GFq):
        acc = E.zero
        for ci, pw in zip(c.c, powers):
            acc = acc + pw * ci
        return acc

    return emb
