"""Command-line entry point: ``stickel stick|iwasawa|verify ...``.

Exit codes: 0 pass, 1 suite failure, 2 usage error, 3 precondition error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import bernoulli as bern
from .errors import PreconditionError
from .fields import is_imaginary, is_subfield, make_field, subfields_of_cyclotomic
from .grouprings import GroupRingElement
from .logval import degree_zero_check
from .stickelberger import (
    check_restriction,
    stickelberger,
    twist_factor,
    twisted_stickelberger,
)
from .tower import (
    coherent_stickelberger,
    ideal_index,
    make_tower,
    mirror,
    reduce_mod_level,
    symmetrize,
    tate_twist,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _field(args, f_attr="f", h_attr="H"):
    f = getattr(args, f_attr)
    if f is None:
        raise UsageError(f"--{f_attr.replace('_', '-')} is required")
    gens = []
    for chunk in getattr(args, h_attr) or []:
        gens += chunk
    return make_field(f, gens)


def render_element(x: GroupRingElement) -> str:
    """sum c [a] with [a] the Artin symbol of a; '0' for the zero element."""
    if x.is_zero():
        return "0"
    parts = []
    for g, c in sorted(x.coeffs.items()):
        parts.append(f"{c}*[{g}]")
    out = " + ".join(parts).replace("+ -", "- ")
    if x.is_ladic:
        out += f"  (mod {x.ell}^{x.M})"
    return out


# -- commands ------------------------------------------------------------------


def cmd_stick(args) -> tuple[dict, bool]:
    F = _field(args)
    sigma = stickelberger(F)
    out = {"field": F.to_json(), "degree": F.degree, "imaginary": is_imaginary(F),
           "sigma": sigma.to_json(), "sigma_text": render_element(sigma) + ("" if is_imaginary(F) else " (real field)")}
    ok = True
    if args.c is not None:
        delta = twist_factor(F, args.c)
        sc = twisted_stickelberger(F, args.c)
        out.update({"c": args.c, "delta": delta.to_json(), "delta_text": render_element(delta),
                    "sigma_c": sc.to_json(), "sigma_c_text": render_element(sc)})
    if args.restrict is not None:
        gens = []
        for chunk in args.restrict_H or []:
            gens += chunk
        K = make_field(args.restrict, gens)
        rep = check_restriction(F, K, args.c)
        out["restriction"] = rep.to_json()
        out["restriction_text"] = {"lhs": render_element(rep.lhs), "rhs": render_element(rep.rhs),
                                   "factor": render_element(rep.factor)}
        ok = rep.equal
    return out, ok


def cmd_iwasawa(args) -> tuple[dict, bool]:
    F = _field(args)
    if args.ell is None:
        raise UsageError("--ell is required")
    ctx = make_tower(args.ell, F, args.prec_M, args.tdeg_N)
    rng = random.Random(args.seed)
    out = {"context": ctx.to_json(), "m": ctx.m, "delta_field": ctx.delta_field.to_json(),
           "action": args.action}
    ok = True
    if args.action == "mirror":
        if args.selftest:
            trials = []
            for _ in range(args.count):
                a, b = ctx.random_element(rng), ctx.random_element(rng)
                trials.append(mirror(mirror(a)) == a and mirror(a * b) == mirror(a) * mirror(b))
            ok = all(trials) and mirror(ctx.e_plus()) == ctx.e_minus()
            out["selftest"] = {"trials": len(trials), "passed": sum(trials), "swaps_e_pm": mirror(ctx.e_plus()) == ctx.e_minus()}
        else:
            phi = coherent_stickelberger(ctx, args.c[0], args.n)
            out["result"] = mirror(phi).to_json()
    elif args.action == "twist":
        if args.selftest:
            trials = []
            for _ in range(args.count):
                a = ctx.random_element(rng)
                trials.append(tate_twist(a, args.i) == a if args.i == 0 else
                              tate_twist(tate_twist(a, args.i), -args.i) == a)
            ok = all(trials)
            out["selftest"] = {"i": args.i, "trials": len(trials), "passed": sum(trials)}
        else:
            phi = coherent_stickelberger(ctx, args.c[0], args.n)
            out["result"] = tate_twist(phi, args.i).to_json()
    elif args.action == "symmetrize":
        phi = coherent_stickelberger(ctx, args.c[0], args.n)
        out["result"] = symmetrize(phi).to_json()
    elif args.action == "reduce":
        phi = coherent_stickelberger(ctx, args.c[0], args.n)
        level = args.n if args.level is None else args.level
        red = reduce_mod_level(phi, level)
        out["level"] = level
        out["result"] = red.to_json()
        out["result_text"] = render_element(red)
    elif args.action == "index":
        rep = ideal_index(ctx, args.n, args.c, args.i, args.lift)
        out["index"] = {k: v for k, v in rep.items() if k != "divisors"}
        out["divisors"] = rep.get("divisors")
        ok = rep["certified"]
    return out, ok


def _suite_bernoulli(args):
    rows = []
    for f in range(3, args.fmax + 1):
        if f % 4 == 2:
            continue
        for F in subfields_of_cyclotomic(f, exact=True):
            if is_imaginary(F):
                r = bern.stick_eval_identity_check(F)
                rows.append({"F": F.to_json(), "sign": r["sign"], "holds": r["holds"]})
    # fields where every odd value vanishes fix no sign
    signs = {r["sign"] for r in rows if r["sign"] is not None}
    vacuous = [r["F"] for r in rows if r["sign"] is None]
    report = {"fields": len(rows), "signs": sorted(signs), "vacuous": vacuous,
              "failures": [r for r in rows if not r["holds"]]}
    return report, all(r["holds"] for r in rows) and len(signs) == 1


def _suite_kummer(args):
    ells = [args.ell] if args.ell else [p for p in range(5, 101) if all(p % q for q in range(2, p))]
    rows = [bern.kummer_check(ell, k) for ell in ells for k in range(2, ell - 2, 2)]
    flagged = sorted({(r["ell"], r["k"]) for r in rows if r["irregular"]})
    return {"checks": len(rows), "irregular": flagged, "failures": [r for r in rows if not r["holds"]]}, \
        all(r["holds"] for r in rows)


def _suite_hminus(args):
    ps = [args.p] if args.p else [p for p in range(3, args.pmax + 1) if all(p % q for q in range(2, p))]
    table = {p: bern.minus_class_number(p) for p in ps}
    return {"h_minus": table}, all(h >= 1 for h in table.values())


def _suite_consistency(args):
    if args.ell is None:
        raise UsageError("--ell is required")
    c = args.c[0] if args.c else bern.smallest_primitive_odd(args.ell)
    rep = bern.annihilation_consistency(args.ell, c, args.prec_M)
    return rep, rep["consistent"]


def _suite_degree_zero(args):
    ells = [args.ell] if args.ell else [3, 5, 7]
    rng = random.Random(args.seed)
    failures = []
    total = 0
    for ell in ells:
        for _ in range(args.count):
            x = Fraction(rng.randint(1, 10**6) * rng.choice((1, -1)), rng.randint(1, 10**6))
            r = degree_zero_check(x, ell, args.prec_M)
            total += 1
            if not r["holds"]:
                failures.append({"ell": ell, "x": [x.numerator, x.denominator]})
    return {"checks": total, "seed": args.seed, "M": args.prec_M, "failures": failures}, not failures


def _suite_restriction(args):
    checked, failures = 0, []
    for f in range(3, args.fmax + 1):
        if f % 4 == 2:
            continue
        fields = subfields_of_cyclotomic(f, exact=True)
        for F in fields:
            for K in subfields_of_cyclotomic(f):
                if K.f == 1 or not is_subfield(K, F):
                    continue
                checked += 1
                if not check_restriction(F, K).equal:
                    failures.append({"F": F.to_json(), "K": K.to_json()})
    return {"pairs": checked, "failures": failures}, not failures


SUITES = {
    "bernoulli": _suite_bernoulli,
    "kummer": _suite_kummer,
    "hminus": _suite_hminus,
    "consistency": _suite_consistency,
    "degree-zero": _suite_degree_zero,
    "restriction": _suite_restriction,
}


def cmd_verify(args) -> tuple[dict, bool]:
    report, ok = SUITES[args.suite](args)
    report = dict(report)
    report["suite"] = args.suite
    report["pass"] = bool(ok)
    return report, ok


# -- parser ------------------------------------------------------------------


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--ell", type=int, default=d(None), help="the odd prime ell")
    p.add_argument("--prec-M", type=int, default=d(16), help="ell-adic precision (default 16)")
    p.add_argument("--tdeg-N", type=int, default=d(9), help="T-adic truncation degree (default 9)")
    p.add_argument("--format", choices=("json", "text"), default=d("text"))
    p.add_argument("--cache-dir", default=d(None), help="directory for JSON caches")
    p.add_argument("--seed", type=int, default=d(0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stickel", description="Stickelberger elements, towers and checks.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stick", help="Stickelberger element of an abelian field")
    _global_flags(p, suppress=True)
    p.add_argument("--f", type=int, required=True, help="conductor")
    p.add_argument("--H", type=_int_list, action="append", help="generators of H (comma-separated)")
    p.add_argument("--c", type=int, help="twist c")
    p.add_argument("--restrict", type=int, help="conductor of a subfield K")
    p.add_argument("--restrict-H", type=_int_list, action="append", help="generators of H_K")
    p.set_defaults(func=cmd_stick)

    p = sub.add_parser("iwasawa", help="operations in the truncated Iwasawa algebra")
    _global_flags(p, suppress=True)
    p.add_argument("--f", type=int, required=True, help="conductor of the base field")
    p.add_argument("--H", type=_int_list, action="append")
    p.add_argument("action", choices=("mirror", "twist", "symmetrize", "reduce", "index"))
    p.add_argument("--c", type=_int_list, default=[3], help="twist(s) c, comma-separated")
    p.add_argument("--n", type=int, default=0, help="level")
    p.add_argument("--level", type=int, help="target level for reduce")
    p.add_argument("--i", type=int, default=0, help="Tate twist index")
    p.add_argument("--lift", type=int, help="extra levels for the coherent lift (index)")
    p.add_argument("--selftest", action="store_true")
    p.add_argument("--count", type=int, default=50)
    p.set_defaults(func=cmd_iwasawa)

    p = sub.add_parser("verify", help="run a verification suite")
    _global_flags(p, suppress=True)
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--p", type=int)
    p.add_argument("--pmax", type=int, default=67)
    p.add_argument("--fmax", type=int, default=60)
    p.add_argument("--c", type=_int_list)
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(report, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(report, sort_keys=True, default=str) + "\n")
        return
    width = max((len(k) for k in report), default=0)
    for k in sorted(report):
        v = report[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, default=str)
        stream.write(f"{k:<{width}}  {v}\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    if args.cache_dir:
        bern.set_cache(bern.BernoulliCache(args.cache_dir))
    try:
        report, ok = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        sys.stderr.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    _emit(report, args.format, sys.stdout)
    return EXIT_PASS if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
