"""Command-line front end.

Exit codes: 0 success or Yes, 1 No or refuted, 2 Unknown, 64 usage error.
Field arguments accept a registry name (see ``valfun example --list``) or a
JSON file.  Polynomial and element literals follow the grammar documented in
:mod:`valfun.fixtures`.  ``VALFUN_SEED`` sets the default seed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Optional

from .classify import (
    DomainDescriptor,
    GroupTooCoarse,
    RootsNotRealizable,
    SlopeConditionError,
    classify,
    find_rootless,
    parse_residue,
    valuation_lemma_witness,
)
from .fields.upoly import RationalFn, UPoly
from .fields.valued import ValueNotInImage, residue_roots
from .fixtures import (
    FIELD_NAMES,
    LiteralError,
    MONIC_SINGULAR,
    format_element,
    load_field,
    load_monic_singular,
    monic_singular_to_json,
    parse_element,
    parse_fn,
    parse_poly,
    parse_value,
    registry_field,
)
from .intr import EvalSet, Verdict, check_membership, localization_certificate
from .localpoly import local_poly
from .monic_singular import check_diamond_law, approx_identity_holds, identity_holds, sample_pairs, theta_membership, validate
from .newton import minval_poly
from .values import INF, GroupDescriptor, LexInt, QuadIrr

EX_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --- report plumbing ----------------------------------------------------------


class Report:
    """Ordered key/value report rendered as text or JSON."""

    def __init__(self, title: str):
        self.title = title
        self.items: list[tuple[str, object]] = []
        self.code = 0

    def add(self, key: str, value) -> "Report":
        self.items.append((key, value))
        return self

    def render(self, fmt: str) -> str:
        if fmt == "json":
            body = {"command": self.title, "exit_code": self.code}
            body.update({k: _jsonable(v) for k, v in self.items})
            return json.dumps(body, indent=2, sort_keys=False, ensure_ascii=False)
        lines = [f"== {self.title} =="]
        for k, v in self.items:
            if isinstance(v, (dict, list)):
                lines.append(f"{k}: {json.dumps(_jsonable(v), ensure_ascii=False)}")
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{k}:")
                lines.append(_indent(v))
            else:
                lines.append(f"{k}: {_text(v)}")
        return "\n".join(lines)


def _indent(s: str) -> str:
    return "\n".join("  " + line for line in s.splitlines())


def _text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, Fraction):
        return str(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    return str(v)


def _value(x) -> str:
    return "inf" if x is INF else str(x)


def _verdict_items(rep: Report, v: Verdict, F) -> None:
    rep.add("verdict", v.kind.capitalize())
    if v.kind == "yes":
        rep.add("certificate", v.certificate)
    elif v.kind == "no":
        rep.add("witness", format_element(v.witness, F))
        rep.add("witness value", _value(v.witness_value))
        rep.add("reason", v.reason)
    else:
        rep.add("reason", v.reason)
        rep.add("unresolved", v.unresolved)
    rep.code = v.exit_code


# --- argument helpers ---------------------------------------------------------


def _group(spec: str) -> GroupDescriptor:
    kind, _, arg = spec.partition(":")
    if kind == "lex":
        return LexInt(int(arg or 1))
    if kind in ("quad", "quad_sqrt2"):
        return QuadIrr()
    raise UsageError(f"unknown group {spec!r}; use lex:N or quad_sqrt2")


def _eval_set(spec: str, F) -> EvalSet:
    kind, _, arg = spec.partition(":")
    if kind == "ring":
        return EvalSet.whole_ring()
    if kind == "field":
        return EvalSet.whole_field()
    if kind == "finite":
        elems = [parse_element(a, F) for a in arg.split(";") if a.strip()]
        if any(e is None for e in elems):
            raise UsageError("finite sets hold field elements, not polynomials")
        return EvalSet.finite(elems)
    if kind == "window":
        lo, sep, hi = arg.partition(";")
        if not sep:
            raise UsageError("window sets are written window:LO;HI (either bound may be empty)")
        conv = lambda s: parse_value(s, F.group) if s.strip() else None
        return EvalSet.window(conv(lo), conv(hi))
    raise UsageError(f"unknown evaluation set {spec!r}; use ring, field, finite:a;b or window:LO;HI")


def _default_seed() -> int:
    raw = os.environ.get("VALFUN_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"VALFUN_SEED must be an integer, got {raw!r}") from None


# --- SVG ------------------------------------------------------------------------


def _as_float(g) -> float:
    if g.group.kind == "quad":
        a, b = g.coords
        return float(a) + float(b) * 2 ** 0.5
    return float(g.coords[0])


def write_envelope_svg(m, lo: float, hi: float, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "valfun"
    import matplotlib.pyplot as plt

    xs = [lo] + [x for x in map(_as_float, m.breakpoints) if lo < x < hi] + [hi]
    ys = []
    for x in xs:
        k = sum(1 for b in m.breakpoints if _as_float(b) < x)
        c, b = m.segments[k]
        ys.append(c * x + _as_float(b))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(xs, ys, marker="o", linewidth=1.5)
    ax.set_xlabel("gamma")
    ax.set_ylabel("minval")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


# --- subcommands ----------------------------------------------------------------


def cmd_minval(a) -> Report:
    F = load_field(a.field)
    f = parse_poly(a.poly, F)
    m = minval_poly(f, F)
    rep = Report("minval").add("field", a.field).add("poly", f.format())
    rep.add("segments", m.describe()).add("breakpoints", [str(b) for b in m.breakpoints])
    rep.add("envelope", m.to_json())
    if a.svg:
        plottable = F.group.kind == "quad" or F.group.rank == 1
        if not plottable:
            rep.add("svg", "skipped (plots need a rank-1 or quad group)")
        else:
            if a.window:
                lo, hi = (float(Fraction(x)) for x in a.window.split(","))
            else:
                bs = [_as_float(b) for b in m.breakpoints] or [0.0]
                lo, hi = min(bs) - 2, max(bs) + 2
            write_envelope_svg(m, lo, hi, a.svg)
            rep.add("svg", a.svg)
    return rep


def cmd_locpoly(a) -> Report:
    F = load_field(a.field)
    f = parse_poly(a.poly, F)
    t = parse_element(a.at, F)
    if t is None:
        raise UsageError("--at must be a field element")
    lp = local_poly(f, t, F)
    rep = Report("locpoly").add("poly", f.format()).add("t", format_element(t, F))
    rep.add("support", list(lp.support)).add("d", lp.d).add("pivot", str(lp.pivot))
    rep.add("loc", lp.loc.format())
    roots = lp.nonzero_roots() if _roots_supported(lp.loc) else None
    rep.add("nonzero roots", "unsupported residue field" if roots is None else [str(r) for r in roots])
    return rep


def _roots_supported(loc) -> bool:
    try:
        residue_roots(loc)
        return True
    except Exception:
        return False


def cmd_val(a) -> Report:
    F = load_field(a.field)
    e = parse_element(a.elem, F)
    if e is None:
        raise UsageError("--elem must be a field element (no x)")
    v = F.valuation(e)
    rep = Report("val").add("element", format_element(e, F)).add("value", _value(v))
    if v is not INF and v.sign() == 0:
        rep.add("residue", str(F.residue(e)))
    return rep


def cmd_check(a) -> Report:
    F = load_field(a.field)
    phi = parse_fn(a.fn, F)
    E = _eval_set(a.set, F)
    v = check_membership(phi, F, E, depth=a.depth)
    rep = Report("check").add("field", a.field).add("function", phi.format()).add("set", a.set)
    rep.add("seed", a.seed)
    _verdict_items(rep, v, F)
    if v.kind == "no":
        rep.add("replay", {"field": F.to_json(), "function": phi.format(),
                           "witness": format_element(v.witness, F)})
    return rep


def cmd_classify(a) -> Report:
    kind, q = parse_residue(a.residue)
    d = DomainDescriptor(kind, _group(a.group), q)
    c = classify(d)
    rep = Report("classify").add("descriptor", d.label())
    rep.add("prufer", c.prufer).add("bezout", c.bezout).add("reasons", "\n".join(c.reasons))
    rep.add("verdict", "Prüfer" if c.prufer else "not Prüfer")
    if c.unit_valued_witness is not None:
        rep.add("monic unit-valued witness", c.unit_valued_witness.format())
    if c.pair_witness is not None:
        rep.add("rootless pair", [p.format() for p in c.pair_witness])
    rep.code = 0 if c.prufer else 1
    return rep


def cmd_diamond_verify(a) -> Report:
    data = load_monic_singular(a.fixture)
    val = validate(data, seed=a.seed)
    rep = Report("diamond-verify").add("fixture", data.name or a.fixture).add("seed", a.seed)
    rep.add("hypotheses", val["checks"])
    if not val["passed"]:
        rep.code = 1
        return rep
    pairs, skipped = sample_pairs(data, a.samples, seed=a.seed)
    failures = [(x, y) for x, y in pairs if not check_diamond_law(data, x, y)]
    F0 = data.valuations()[0]
    rep.add("pairs", len(pairs)).add("pole rejections", skipped).add("failures", len(failures))
    if failures:
        rep.add("first failure", [format_element(x, F0) for x in failures[0]])
    rep.add("fixture satisfies d*f*h1 + g*h2 = d*f^2 - d*f(0)^2 + f(0)^2", identity_holds(data))
    rep.add("identity for g, h1, h2 built from f and d", approx_identity_holds(data.f, data.d))
    rep.code = 1 if failures else 0
    return rep


def cmd_witness(a) -> Report:
    F = load_field(a.field)
    phi = parse_fn(a.fn, F)
    alpha = parse_value(a.alpha, F.group)
    rep = Report("witness").add("function", phi.format()).add("alpha", str(alpha))
    try:
        w = valuation_lemma_witness(phi, alpha, F)
    except (SlopeConditionError, RootsNotRealizable, GroupTooCoarse, ValueNotInImage) as exc:
        rep.add("error", type(exc).__name__).add("reason", str(exc))
        rep.code = 1
        return rep
    rep.add("a", format_element(w.a, F)).add("v(a)", str(F.valuation(w.a)))
    rep.add("minval", str(w.minval)).add("v(phi(a))", _value(w.value))
    rep.add("direction", "raised" if w.raised else "lowered")
    return rep


# --- examples -------------------------------------------------------------------


def example_t_over_x2_plus_t(seed: int) -> Report:
    import random

    F = registry_field("t-adic-Q")
    phi = parse_fn("t/(x^2+t)", F)
    v = check_membership(phi, F, EvalSet.whole_ring())
    rep = Report("example t-over-x2-plus-t").add("field", "Q(t), t-adic").add("function", phi.format())
    _verdict_items(rep, v, F)
    rnd = random.Random(seed)
    t = F.K.gen("t")
    ok_units = all(F.valuation(phi(F.random_element_of_value(rnd, F.group.zero()))) == F.valuation(t)
                   for _ in range(100))
    one = F.group.element(1)
    ok_pos = all(F.valuation(phi(F.random_element_of_value(rnd, one * rnd.randint(1, 5)))).sign() == 0
                 for _ in range(100))
    rep.add("v(phi(d)) = v(t) on 100 units", ok_units).add("v(phi(d)) = 0 on 100 with v(d) > 0", ok_pos)
    if not (ok_units and ok_pos):
        rep.code = 1
    return rep


def example_rank2(seed: int) -> Report:
    F = registry_field("lex2-Q")
    C = F.coarsen(1)
    phi = parse_fn("(1/t)/(x - 1/t)", F)
    fine = check_membership(phi, F, EvalSet.whole_ring())
    coarse = check_membership(parse_fn("(1/t)/(x - 1/t)", C), C, EvalSet.whole_ring())
    rep = Report("example rank2-localization").add("function", phi.format())
    rep.add("fine field", "Q(s,t), v(s) = (1,0), v(t) = (0,1)").add("fine verdict", fine.kind.capitalize())
    rep.add("coarse field", "Q(s,t), v(s) = 1, v(t) = 0").add("coarse verdict", coarse.kind.capitalize())
    ok = fine.kind == "yes" and coarse.kind == "no"
    if coarse.kind == "no":
        psi = parse_fn("(1/t)/(x - 1/t)", C)
        val = C.valuation(psi(coarse.witness))
        rep.add("witness", format_element(coarse.witness, C)).add("witness value", _value(val))
        ok = ok and val is not INF and val.sign() < 0
    rep.code = 0 if ok else 1
    return rep


def example_pointed(seed: int) -> Report:
    F = registry_field("t-adic-Q")
    phi = parse_fn("1/(x+1)", F)
    cert = localization_certificate(phi, F, EvalSet.whole_ring(), samples=200, seed=seed)
    rep = Report("example pointed-localization-certificate").add("function", phi.format())
    rep.add("h", cert.h.format()).add("delta", str(cert.delta)).add("eta", str(cert.eta))
    rep.add("n", cert.n).add("m", cert.m).add("checks", cert.report)
    rep.code = 0 if cert.passed else 1
    return rep


def example_f3st(seed: int) -> Report:
    data = MONIC_SINGULAR["F3-st"]()
    val = validate(data, seed=seed)
    th = theta_membership(data)
    pairs, skipped = sample_pairs(data, 200, seed=seed)
    fails = sum(1 for x, y in pairs if not check_diamond_law(data, x, y))
    rep = Report("example f3st-diamond").add("fixture", monic_singular_to_json(data))
    rep.add("hypotheses", val["checks"]).add("theta integer-valued", [v.kind for v in th])
    rep.add("pairs", len(pairs)).add("failures", fails)
    ok = val["passed"] and all(v.kind == "yes" for v in th) and fails == 0
    rep.code = 0 if ok else 1
    return rep


def classification_rows():
    residues = [("finite", 2), ("finite", 3), ("finite", 4), ("rationals", None), ("function_field", 2),
                ("algclosed", None)]
    groups = [LexInt(1), LexInt(2), QuadIrr()]
    for kind, q in residues:
        for g in groups:
            yield DomainDescriptor(kind, g, q)


def expected_classification(d: DomainDescriptor) -> tuple[bool, bool]:
    """(Prüfer, Bézout) from the structural rules, independent of witness search."""
    principal = d.group.kind == "lex"
    if d.residue_kind == "algclosed":
        return principal, principal
    return True, True


def example_classification(seed: int) -> Report:
    rep = Report("example classification-table")
    rows, ok = [], True
    for d in classification_rows():
        c = classify(d)
        want = expected_classification(d)
        good = (c.prufer, c.bezout) == want
        for p in [c.unit_valued_witness] + list(c.pair_witness or ()):
            if p is not None and residue_roots(p):
                good = False
        ok = ok and good
        rows.append({"descriptor": d.label(), "prufer": c.prufer, "bezout": c.bezout, "agrees": good})
    rep.add("rows", rows)
    rep.code = 0 if ok else 1
    return rep


EXAMPLES: dict[str, Callable[[int], Report]] = {
    "t-over-x2-plus-t": example_t_over_x2_plus_t,
    "rank2-localization": example_rank2,
    "pointed-localization-certificate": example_pointed,
    "f3st-diamond": example_f3st,
    "classification-table": example_classification,
}


def cmd_example(a) -> Report:
    if a.list or a.name is None:
        rep = Report("example").add("examples", list(EXAMPLES)).add("fields", list(FIELD_NAMES))
        rep.add("monic-singular fixtures", list(MONIC_SINGULAR))
        return rep
    if a.name not in EXAMPLES:
        raise UsageError(f"unknown example {a.name!r}; known: {', '.join(EXAMPLES)}")
    return EXAMPLES[a.name](a.seed)


def cmd_selftest(a) -> Report:
    rep = Report("selftest")
    ok = True
    for name, fn in EXAMPLES.items():
        r = fn(a.seed)
        rep.add(name, "pass" if r.code == 0 else "FAIL")
        ok = ok and r.code == 0
    R3 = registry_field("lex2-F3").coeffs
    rootless = find_rootless(R3, 2)
    rep.add("rootless quadratic over F_3", rootless.format())
    rep.code = 0 if ok else 1
    return rep


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="valfun", description="Integer-valued rational functions over valued fields.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("minval", help="minimum valuation envelope of a polynomial")
    s.add_argument("--field", required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--svg", help="write an SVG plot of the envelope to this path")
    s.add_argument("--window", help="gamma window for the plot, e.g. -3,3")
    s.set_defaults(handler=cmd_minval)

    s = sub.add_parser("locpoly", help="local polynomial at t")
    s.add_argument("--field", required=True)
    s.add_argument("--poly", required=True)
    s.add_argument("--at", required=True)
    s.set_defaults(handler=cmd_locpoly)

    s = sub.add_parser("val", help="valuation and residue of an element")
    s.add_argument("--field", required=True)
    s.add_argument("--elem", required=True)
    s.set_defaults(handler=cmd_val)

    s = sub.add_parser("check", help="decide integer-valuedness on an evaluation set")
    s.add_argument("--field", required=True)
    s.add_argument("--fn", required=True)
    s.add_argument("--set", default="ring")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--seed", type=int)
    s.set_defaults(handler=cmd_check)

    s = sub.add_parser("classify", help="Prüfer and Bézout classification")
    s.add_argument("--residue", required=True, help="finite:q, rationals, function_field:q or algclosed")
    s.add_argument("--group", required=True, help="lex:N or quad_sqrt2")
    s.set_defaults(handler=cmd_classify)

    s = sub.add_parser("diamond-verify", help="check the diamond valuation law on random pairs")
    s.add_argument("--fixture", required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int)
    s.set_defaults(handler=cmd_diamond_verify)

    s = sub.add_parser("witness", help="point where the valuation leaves the envelope")
    s.add_argument("--field", required=True)
    s.add_argument("--fn", required=True)
    s.add_argument("--alpha", required=True)
    s.set_defaults(handler=cmd_witness)

    s = sub.add_parser("example", help="run a registered worked example")
    s.add_argument("name", nargs="?")
    s.add_argument("--list", action="store_true")
    s.add_argument("--seed", type=int)
    s.set_defaults(handler=cmd_example)

    s = sub.add_parser("selftest", help="run every example")
    s.add_argument("--seed", type=int)
    s.set_defaults(handler=cmd_selftest)
    return p


def run(argv: Optional[list] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    fmt = "text"
    try:
        args = parser.parse_args(argv)
        fmt = args.format
        if args.command is None:
            raise UsageError("valfun: a subcommand is required")
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        report = args.handler(args)
    except UsageError as exc:
        print(str(exc), file=err)
        return EX_USAGE
    except LiteralError as exc:
        print(f"parse error: {exc}", file=err)
        return EX_USAGE
    except (KeyError, ValueError, FileNotFoundError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=err)
        return EX_USAGE
    print(report.render(fmt), file=out)
    return report.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
