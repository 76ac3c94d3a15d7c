"""Command-line front end.

Subcommands:
    np compare | adjoin | symmetric | attain    polygon queries
    deform                                      strata, symbolic charpoly, equation
    certify                                     end-to-end largeness certificate
    as test                                     reducibility criterion vs oracle
    units verify                                filtration sweeps and generation
    plot                                        SVG of the lattice region

Exit codes: 0 success, 2 precondition violation, 3 a certificate or
verification came back negative, 4 malformed input.

JSON output is canonical (sorted keys, fixed separators, no timestamps):
an invocation repeated with the same flags produces identical bytes.
Polygons are written inline as slope x width segments, e.g. "1/2x6" or
"1/3x3,2/3x3", or as the JSON form {"segments": [...]}; base displays
come from the constructors "Hr/s" (one simple block), sums like
"H1/2+H2/3", and "ssN" (N/2 half-slope blocks).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .arith.fields import field_make
from .arith.ramified import order_over
from .arith.witt import witt_for
from .display import deformation, display_polygon, split_display, strata
from .errors import CliParseError, PreconditionError
from .monodromy import (as_reducible, as_reducible_oracle,
                        largeness_certificate, monodromy_equation)
from .polygon import adjoin, attainable, compare, np_make, symmetric_adjoin
from .serialize import canonical_dumps, np_from_json
from .unitgroup import (commutator_class, commutator_span, generation_report,
                        p2_power_report, pth_power_check)

SCALE = 20          # svg units per lattice step
PAD = 30


@dataclass
class RunConfig:
    seed: int
    precision: int | None
    guard: int
    fmt: str
    out: str | None


# -- input grammars -------------------------------------------------------


_SEGMENT = re.compile(r"^(\d+(?:/\d+)?)x(\d+)$")


def parse_polygon(text: str):
    text = text.strip()
    if text.startswith("{"):
        try:
            return np_from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            raise CliParseError(f"polygon JSON: {err}")
    if text.endswith(".json") and os.path.exists(text):
        with open(text) as fh:
            return np_from_json(json.load(fh))
    segments = []
    for k, token in enumerate(t for t in re.split(r"[,\s]+", text) if t):
        m = _SEGMENT.match(token)
        if not m:
            raise CliParseError(
                f"segment {k + 1} ({token!r}): expected slope x width, like 1/2x6")
        segments.append((Fraction(m.group(1)), int(m.group(2))))
    if not segments:
        raise CliParseError("empty polygon")
    return np_make(segments)


def parse_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise CliParseError(f"{text!r} is not a fraction: {err}")
    return value


def parse_point(text: str) -> tuple:
    m = re.match(r"^\(?\s*(\d+)\s*,\s*(\d+)\s*\)?$", text.strip())
    if not m:
        raise CliParseError(f"{text!r} is not a lattice point, expected s,r")
    return int(m.group(1)), int(m.group(2))


def parse_base(text: str) -> list:
    """Display constructor grammar: Hr/s blocks and ssN sums, joined by +."""
    pieces = []
    for part in text.split("+"):
        part = part.strip()
        if part.startswith("ss") and part[2:].isdigit():
            height = int(part[2:])
            if height <= 0 or height % 2:
                raise CliParseError(f"ss height {height} must be even and positive")
            pieces.extend([(1, 2)] * (height // 2))
        elif part.startswith("H"):
            frac = parse_fraction(part[1:])
            if not 0 < frac <= 1:
                raise CliParseError(f"block slope {frac} outside (0, 1]")
            pieces.append((frac.numerator, frac.denominator))
        else:
            raise CliParseError(f"base piece {part!r}: expected Hr/s or ssN")
    return pieces


def parse_field_name(text: str):
    m = re.match(r"^F(\d+)$", text.strip())
    if not m:
        raise CliParseError(f"{text!r} is not a field name like F9")
    q = int(m.group(1))
    if q < 2:
        raise CliParseError(f"field size {q} too small")
    p = min(d for d in range(2, q + 1) if q % d == 0)
    s, qq = 0, 1
    while qq < q:
        qq *= p
        s += 1
    if qq != q:
        raise CliParseError(f"{q} is not a prime power")
    return p, s


def parse_covered(text: str) -> list:
    try:
        return sorted({int(t) for t in text.split(",") if t.strip() != ""})
    except ValueError:
        raise CliParseError(f"{text!r} is not a comma-separated piece list")


# -- output plumbing ------------------------------------------------------


def _resolve_out(path: str | None) -> str | None:
    if path is None or os.path.isabs(path):
        return path
    outdir = os.environ.get("SLOPELAB_OUTDIR")
    return os.path.join(outdir, path) if outdir else path


def _emit(cfg: RunConfig, payload: str) -> None:
    path = _resolve_out(cfg.out)
    if path is None:
        sys.stdout.write(payload)
    else:
        with open(path, "w") as fh:
            fh.write(payload)


def _report(cfg: RunConfig, report: dict, text: str) -> None:
    if cfg.fmt == "svg":
        raise CliParseError("svg output is only available for plot")
    payload = canonical_dumps(report) if cfg.fmt == "json" else text + "\n"
    _emit(cfg, payload)


def _point_set(points) -> str:
    return "{" + ",".join(f"({x},{y})" for x, y in sorted(points)) + "}"


# -- np -------------------------------------------------------------------


def cmd_np(cfg: RunConfig, args) -> int:
    if args.action == "compare":
        a, b = parse_polygon(args.a), parse_polygon(args.b)
        rel = compare(a, b)
        _report(cfg, {"relation": rel, "a": a.to_json(), "b": b.to_json()}, rel)
        return 0
    if args.action == "adjoin":
        np0 = parse_polygon(args.poly)
        out = adjoin(np0, parse_point(args.point))
        _report(cfg, {"input": np0.to_json(), "point": list(parse_point(args.point)),
                      "result": out.to_json(), "pretty": str(out)}, str(out))
        return 0
    if args.action == "symmetric":
        np0 = parse_polygon(args.poly)
        lam = parse_fraction(args.lam)
        out = symmetric_adjoin(np0, lam)
        _report(cfg, {"input": np0.to_json(), "slope": str(lam),
                      "result": out.to_json(), "pretty": str(out)}, str(out))
        return 0
    np0 = parse_polygon(args.poly)
    lam = parse_fraction(args.lam)
    wit = attainable(np0, lam)
    report = {"polygon": np0.to_json(), "slope": str(lam),
              "attainable": wit is not None,
              "witness": wit.to_json() if wit else None}
    text = (f'attainable, witness "{wit.witness}"' if wit else "not attainable")
    _report(cfg, report, text)
    return 0


# -- deform / certify -----------------------------------------------------


def _build_deformation(cfg: RunConfig, args):
    pieces = parse_base(args.base)
    lam = parse_fraction(args.lam)
    if not 0 < lam < 1:
        raise CliParseError(f"deformation slope {lam} outside (0, 1)")
    s = lam.denominator
    precision = cfg.precision or 2 * s + 2
    ring = witt_for(args.p, s, precision, cfg.seed)
    return deformation(split_display(ring, pieces), lam)


def cmd_deform(cfg: RunConfig, args) -> int:
    spec = _build_deformation(cfg, args)
    eq = monodromy_equation(spec)
    st = spec.strat
    # count the coefficients below the monic leading term
    terms = sum(1 for k in spec.chi.coeffs if k != spec.base.h)
    report = {
        "base": {"d": spec.base.d, "c": spec.base.c,
                 "polygon": display_polygon(spec.base).to_json()},
        "slope": str(spec.lam),
        "deformation": spec.to_json(),
        "chi_terms": terms,
        "deformed_polygon": spec.deformed_polygon().to_json(),
        "equation": eq.to_json(),
    }
    text = "\n".join([
        f"strata {_point_set(st.active)} and {terms}-term chi",
        f"np(*) = {spec.deformed_polygon()}",
        f"equation terms at F-offsets {sorted(eq.terms)}",
    ])
    _report(cfg, report, text)
    return 0


def cmd_certify(cfg: RunConfig, args) -> int:
    lam = parse_fraction(args.lam)
    s, r = lam.denominator, lam.numerator
    # screen the slope shape before the deformation rejects it for
    # a less specific reason
    if s < 3:
        raise PreconditionError(f"need denominator s >= 3, slope is {lam}")
    if r == s - 1:
        raise PreconditionError(
            f"slope {lam} has numerator s-1; the certificate pattern "
            "needs r <= s-2")
    spec = _build_deformation(cfg, args)
    cert = largeness_certificate(spec, guard=cfg.guard, seed=cfg.seed)
    good = [l["piece"] for l in cert["legs"] if l["status"] == "certified"]
    bad = [l["piece"] for l in cert["legs"] if l["status"] != "certified"]
    bits = [f"pieces {{{','.join(map(str, good))}}} certified"]
    if bad:
        bits.append(f"{{{','.join(map(str, bad))}}} failed")
    bits.append(f"verdict {cert['verdict']}")
    _report(cfg, cert, ", ".join(bits))
    return 0 if cert["verdict"] == "large" else 3


# -- as -------------------------------------------------------------------


def cmd_as(cfg: RunConfig, args) -> int:
    p, s = parse_field_name(args.field)
    K = field_make(p, s, cfg.seed)
    if args.all:
        values = list(K.elements())
    elif args.a is not None:
        if not 0 <= args.a < K.q:
            raise CliParseError(f"--a {args.a} is not an element of F_{K.q}")
        values = [args.a]
    else:
        raise CliParseError("as test needs --all or --a CODE")
    cases = []
    for A in values:
        red, witness = as_reducible(K, args.q, A)
        orc = as_reducible_oracle(K, args.q, A)
        entry = {"a": A, "criterion": red, "oracle": orc}
        if witness is not None:
            G, pre = witness
            entry["witness"] = {"subgroup": sorted(G), "preimage": pre}
        cases.append(entry)
    agreed = sum(1 for c in cases if c["criterion"] == c["oracle"])
    report = {"field": f"F{K.q}", "q": args.q, "cases": cases,
              "agreements": agreed, "total": len(cases),
              "agree": agreed == len(cases)}
    _report(cfg, report,
            f"{agreed}/{len(cases)} agreement criterion vs oracle")
    return 0 if report["agree"] else 3


# -- units ----------------------------------------------------------------


def cmd_units(cfg: RunConfig, args) -> int:
    p, s, r, n = args.p, args.s, args.r, args.n
    if not (0 < r < s and math.gcd(r, s) == 1):
        raise PreconditionError(f"slope {r}/{s} must be reduced and in (0, 1)")
    K = field_make(p, s, cfg.seed)
    covered = parse_covered(args.covered) if args.covered else [0, 1]
    covered = [i for i in covered if i < n]

    depths = []
    ctx = order_over(K, r, s + 3)
    pair_budget = 500
    for depth in range(1, s + 2):
        pairs = [(x, y) for x in K.elements() for y in K.elements()]
        if len(pairs) > pair_budget:
            rng = random.Random(cfg.seed)
            pairs = [(rng.randrange(K.q), rng.randrange(K.q))
                     for _ in range(pair_budget)]
        for x, y in pairs:
            commutator_class(ctx, x, y, depth)       # self-checking
        full = commutator_span(K, r, depth) == frozenset(K.elements())
        depths.append({"n": depth, "full": full,
                       "expected_full": (depth + 1) % s != 0,
                       "pairs": len(pairs)})
    commutator_ok = all(d["full"] == d["expected_full"] for d in depths)

    power_depth = 1 if p >= 3 else 2
    pctx = order_over(K, r, (power_depth + 1) * s + 2)
    betas = [pctx.zero(), pctx.one()]
    power_ok = all(pth_power_check(pctx, alpha, beta, power_depth)
                   for alpha in K.elements() for beta in betas)
    power = {"depth": power_depth, "alphas": K.q, "ok": power_ok}
    if p == 2:
        finding = p2_power_report(s, 1, cfg.seed)
        power["depth_one_finding"] = {
            "level": finding["level"],
            "observed_law": "alpha + alpha^2",
            "holds": finding["all_match_alpha_plus_square"],
            "failing_alphas": finding["failing_alphas"],
        }

    gen = generation_report(order_over(K, r, 2), n, covered, guard=cfg.guard)

    ok = commutator_ok and power_ok and gen["generates"]
    report = {"p": p, "s": s, "q": K.q, "lambda": f"{r}/{s}", "n": n,
              "covered": covered,
              "commutator": {"depths": depths, "ok": commutator_ok},
              "pth_power": power,
              "generation": gen,
              "ok": ok}
    text = "\n".join([
        f"commutator classes ok ({len(depths)} depths)"
        if commutator_ok else "commutator span mismatch",
        "p-th power congruence ok" if power_ok
        else f"p-th power congruence failed at depth {power_depth}",
        f"generation {str(gen['generates']).lower()} (order {gen['order']})",
    ])
    _report(cfg, report, text)
    return 0 if ok else 3


# -- plot -----------------------------------------------------------------


def _svg(width: int, height: int, body: list) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">')
    return "\n".join([head] + body + ["</svg>"]) + "\n"


def _map(height: int):
    def to_svg(x, y):
        return PAD + SCALE * int(x), height - PAD - SCALE * int(y)
    return to_svg


def _polyline(points, stroke: str, dash: str = "") -> str:
    attr = f' stroke-dasharray="{dash}"' if dash else ""
    pts = " ".join(f"{x},{y}" for x, y in points)
    return (f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="2"{attr}/>')


def cmd_plot(cfg: RunConfig, args) -> int:
    if cfg.fmt != "svg":
        raise CliParseError("plot only emits svg")
    if args.d is not None or args.c is not None or args.lam is not None:
        if None in (args.d, args.c, args.lam):
            raise CliParseError("plot needs all of --d, --c, --lambda")
        d, c = args.d, args.c
        h = d + c
        np0 = (parse_polygon(args.poly) if args.poly
               else np_make([(Fraction(c, h), h)]))
        lam = parse_fraction(args.lam)
        st = strata(d, c, np0, lam)
        height = 2 * PAD + SCALE * c
        width = 2 * PAD + SCALE * h
        to = _map(height)
        body = [
            _polyline([to(0, 0), to(h, 0)], "#999"),
            _polyline([to(0, 0), to(0, c)], "#999"),
            _polyline([to(*v) for v in
                       ((1, 0), (d, 0), (h - 1, c - 1), (c, c - 1), (1, 0))],
                      "#888", dash="2,2"),
            _polyline([to(*bp) for bp in np0.breakpoints()], "#bbb", dash="6,3"),
            _polyline([to(*bp) for bp in st.np_star.breakpoints()], "#1a6"),
        ]
        for x, y in sorted(st.region):
            sx, sy = to(x, y)
            fill = "#1a6" if (x, y) in st.active else "#ccc"
            body.append(f'<circle cx="{sx}" cy="{sy}" r="4" fill="{fill}"/>')
        _emit(cfg, _svg(width, height, body))
        return 0
    if not args.poly:
        raise CliParseError("plot needs --poly or the --d/--c/--lambda region")
    np0 = parse_polygon(args.poly)
    h, e = np0.endpoint
    height = 2 * PAD + SCALE * max(1, int(e))
    width = 2 * PAD + SCALE * h
    to = _map(height)
    body = [
        _polyline([to(0, 0), to(h, 0)], "#999"),
        _polyline([to(0, 0), to(0, max(1, int(e)))], "#999"),
        _polyline([to(*bp) for bp in np0.breakpoints()], "#1a6"),
    ]
    for x, y in np0.breakpoints():
        sx, sy = to(x, y)
        body.append(f'<circle cx="{sx}" cy="{sy}" r="4" fill="#1a6"/>')
    _emit(cfg, _svg(width, height, body))
    return 0


# -- wiring ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision", type=int, default=None)
    common.add_argument("--guard", type=int, default=10 ** 7)
    common.add_argument("--format", dest="fmt",
                        choices=("json", "text", "svg"), default=None)
    common.add_argument("-o", "--out", default=None)

    top = _Parser(prog="slopelab", description=__doc__,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    # common flags attach to leaf parsers only; attaching them to the
    # group parsers as well would let the leaf's defaults clobber values
    # parsed at the group level
    np_p = sub.add_parser("np")
    np_sub = np_p.add_subparsers(dest="action", required=True)
    cmp_p = np_sub.add_parser("compare", parents=[common])
    cmp_p.add_argument("a")
    cmp_p.add_argument("b")
    adj_p = np_sub.add_parser("adjoin", parents=[common])
    adj_p.add_argument("--poly", required=True)
    adj_p.add_argument("--point", required=True)
    sym_p = np_sub.add_parser("symmetric", parents=[common])
    sym_p.add_argument("--poly", required=True)
    sym_p.add_argument("--lambda", dest="lam", required=True)
    att_p = np_sub.add_parser("attain", parents=[common])
    att_p.add_argument("--poly", required=True)
    att_p.add_argument("--lambda", dest="lam", required=True)

    for name in ("deform", "certify"):
        pp = sub.add_parser(name, parents=[common])
        pp.add_argument("--base", required=True)
        pp.add_argument("--lambda", dest="lam", required=True)
        pp.add_argument("--p", type=int, default=3)

    as_p = sub.add_parser("as")
    as_sub = as_p.add_subparsers(dest="action", required=True)
    test_p = as_sub.add_parser("test", parents=[common])
    test_p.add_argument("--q", type=int, required=True)
    test_p.add_argument("--field", required=True)
    test_p.add_argument("--all", action="store_true")
    test_p.add_argument("--a", type=int, default=None)

    units_p = sub.add_parser("units")
    units_sub = units_p.add_subparsers(dest="action", required=True)
    verify_p = units_sub.add_parser("verify", parents=[common])
    verify_p.add_argument("--p", type=int, required=True)
    verify_p.add_argument("--s", type=int, required=True)
    verify_p.add_argument("--r", type=int, default=1)
    verify_p.add_argument("--n", type=int, required=True)
    verify_p.add_argument("--covered", default=None)

    plot_p = sub.add_parser("plot", parents=[common])
    plot_p.add_argument("--poly", default=None)
    plot_p.add_argument("--d", type=int, default=None)
    plot_p.add_argument("--c", type=int, default=None)
    plot_p.add_argument("--lambda", dest="lam", default=None)
    return top


_DISPATCH = {"np": cmd_np, "deform": cmd_deform, "certify": cmd_certify,
             "as": cmd_as, "units": cmd_units, "plot": cmd_plot}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        fmt = args.fmt or ("svg" if args.command == "plot" else "text")
        cfg = RunConfig(args.seed, args.precision, args.guard, fmt, args.out)
        return _DISPATCH[args.command](cfg, args)
    except CliParseError as err:
        print(f"slopelab: parse error: {err}", file=sys.stderr)
        return 4
    except PreconditionError as err:
        print(f"slopelab: precondition violated: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())