"""Command-line interface. Every command prints one JSON document.

Exit codes: 0 success, 1 a verification failed, 2 usage error or
parameters outside a routine's preconditions.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .matgrp.enum import CAP_ENV, TooLarge, enum_cap

SCHEMA = "1"


class UsageError(Exception):
    pass


def _sign(text: str) -> int:
    if text in ("+", "+1", "1", "plus"):
        return 1
    if text in ("-", "-1", "minus"):
        return -1
    raise argparse.ArgumentTypeError(f"epsilon must be + or -, got {text!r}")


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", choices=["sl", "su"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)


def _params(args):
    from .spectra import GroupParams

    return GroupParams(1 if args.group == "sl" else -1, args.n, args.q)


def _shared_options(p: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--format", choices=["json", "text"], default=default("json"))
    p.add_argument("--cap", type=_positive, default=default(None),
                   help=f"enumeration cap (default ${CAP_ENV} or 2e7)")
    p.add_argument("--seed", type=int, default=default(0))
    p.add_argument("-v", "--verbose", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coverorders", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    _shared_options(parser, suppress=False)
    # shared options also work after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    _shared_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("primdiv", help="primitive and generalized primitive prime divisors")
    p.add_argument("--t", type=int, required=True, help="base (q for the generalized divisor)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=_sign, default=1)
    p.add_argument("--s-max", type=_positive, default=None, help="also check divisibility properties up to s")

    p = add("decompose", help="coprime decompositions of n")
    p.add_argument("--kind", choices=["i", "ii"], default="i")
    p.add_argument("--n", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--tables", action="store_true", help="export the embedded tables")

    p = add("maxorders", help="the two maximal element orders of the simple group")
    _group_args(p)
    p.add_argument("--oracle", action="store_true", help="check against brute force")

    p = add("pmax", help="certify that an order is absent from the spectrum")
    _group_args(p)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--b", type=_int_list, default=None, help="comma-separated block sizes")
    p.add_argument("--order", type=int, default=None, help="certify p^(t+1)*order instead")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--oracle", action="store_true")

    p = add("element", help="semisimple element for a given j")
    _group_args(p)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--realize", action="store_true", help="also build the matrix")

    p = add("witness", help="weight with value 1 on the element")
    _group_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--weight", type=_int_list, help="fundamental-basis coefficients")
    g.add_argument("--module", help="natural, wedgeK, twistK:M, A*B")

    p = add("spectrum", help="brute-force element orders")
    _group_args(p)
    p.add_argument("--simple", action="store_true", help="orders in the quotient by the centre")

    p = add("cover", help="element orders of W : G")
    _group_args(p)
    p.add_argument("--module", default="natural")
    p.add_argument("--literal", action="store_true", help="also multiply out all pairs")

    p = add("pipeline", help="end-to-end new order for a module")
    _group_args(p)
    p.add_argument("--module", default="natural")
    p.add_argument("--oracle", action="store_true")

    p = add("verify", help="run acceptance checks")
    p.add_argument("check", help="check id or 'all'")
    p.add_argument("--t-max", type=_positive, default=100)
    p.add_argument("--n-max", type=_positive, default=None)
    p.add_argument("--q-max", type=_positive, default=49)
    p.add_argument("--s-max", type=_positive, default=24)
    return parser


# --- commands ------------------------------------------------------------------

def cmd_primdiv(args):
    from .arith import is_prime_power
    from .primdiv import SignedPair, check_divisibility, gen_primitive_divisor, primitive_divisor

    out = {}
    if args.n >= 2:
        out["primitive"] = primitive_divisor(SignedPair(args.t, args.n, args.eps)).to_json()
    if is_prime_power(args.t):
        res = gen_primitive_divisor(args.t, args.n, args.eps)
        out["generalized"] = res.to_json()
        if args.s_max and res.defined:
            rep = check_divisibility(args.t, args.n, args.eps, args.s_max)
            out["properties"] = {"ok": rep.ok, "failures": rep.failures, "skipped": rep.skipped}
            return "divisor-properties", out, rep.ok
    elif args.s_max:
        raise UsageError("--s-max needs t to be a prime power")
    return "primitive-divisor", out, True


def cmd_decompose(args):
    from .decomp import decompose_i, decompose_ii, restrict_i, tables_json

    if args.tables:
        return "decomposition-tables", tables_json(), True
    if args.n is None:
        raise UsageError("--n is required")
    if args.kind == "i":
        dec = decompose_i(args.n)
        out = {"decomposition": dec.to_json()}
        if args.j is not None:
            out["restriction"] = restrict_i(dec, args.j).to_json(dec)
        return "decomposition-i", out, True
    if args.j is None:
        raise UsageError("--j is required for kind ii")
    trace = [] if args.trace else None
    dec, rmap = decompose_ii(args.n, args.j, trace)
    out = {"decomposition": dec.to_json(), "parts": list(dec.parts), "eta": list(rmap.eta),
           "restriction": rmap.to_json(dec)}
    if trace is not None:
        out["trace"] = [[step, n, j, info] for step, n, j, info in trace]
    return "decomposition-ii", out, True


def cmd_maxorders(args):
    from .spectra import maximal_orders

    P = _params(args)
    a, b = maximal_orders(P)
    out = {"maximal_orders": [a, b]}
    ok = True
    if args.oracle:
        from .matgrp.groups import simple_spectrum

        spec = simple_spectrum(P, args.cap)
        maximal = all(not (x % y == 0 and x != y) for x in spec for y in (a, b))
        ok = a in spec and b in spec and maximal
        out["oracle"] = {"in_spectrum": a in spec and b in spec, "maximal": maximal}
    return "maximal-orders", out, ok


def cmd_pmax(args):
    from .spectra import build_pmax_certificate, order_certificate

    P = _params(args)
    if args.order is not None:
        cert = order_certificate(P, args.order, args.t)
    elif args.s is not None and args.b is not None:
        cert = build_pmax_certificate(P, args.s, args.b)
    else:
        raise UsageError("give --s and --b, or --order")
    out = {"certificate": cert.to_json()}
    ok = True
    if args.oracle:
        from .matgrp.groups import group_spectrum

        absent = cert.excluded_order not in group_spectrum(P, args.cap)
        out["oracle_absent"] = absent
        ok = absent
    return "p-maximal-order", out, ok


def cmd_element(args):
    from .semisimple import (
        center_avoiding,
        element_case_a,
        element_for_j,
        find_unit_product_subset,
        pmax_certificate,
        realization_matches,
        realize_matrix,
        restriction_case_a,
        construction_route,
    )

    P = _params(args)
    case = construction_route(P)
    if case == "c":
        raise UsageError(f"{P.simple_name} is handled by a Frobenius subgroup; use the pipeline command")
    if case == "a":
        spec = element_case_a(P)
        rmap = restriction_case_a(spec, args.j) if args.j is not None else None
    else:
        if args.j is None:
            raise UsageError("--j is required when the element depends on the module")
        spec, rmap = element_for_j(P, args.j)
    out = {"case": case, "element": spec.to_json(), "center_avoiding": center_avoiding(spec),
           "certificate": pmax_certificate(spec).to_json()}
    if args.j is not None:
        subset = find_unit_product_subset(spec, rmap, args.j) if args.j else ()
        out["subset"] = [i + 1 for i in subset]
        if rmap is not None:
            out["restriction"] = rmap.to_json(spec.decomposition)
    ok = True
    if args.realize:
        g = realize_matrix(spec, seed=args.seed)
        ok = realization_matches(spec, g)
        out["matrix"] = g.to_json()
        out["realization_matches"] = ok
    return "semisimple-element", out, ok


def cmd_witness(args):
    from .weights import DominantWeight, fixed_weight_witness

    P = _params(args)
    if args.module is not None:
        from .pipeline import module_weight

        w = module_weight(P, args.module)
    else:
        w = DominantWeight(P.n - 1, tuple(args.weight))
    wit = fixed_weight_witness(P, w)
    return "weight-witness", wit.to_json(), True


def cmd_spectrum(args):
    from .matgrp.groups import exponent_check, group_enum

    P = _params(args)
    ge = group_enum(P, args.cap)
    out = {
        "order": ge.size,
        "order_formula": P.order_sl(),
        "spectrum": sorted(ge.spectrum()),
        "histogram": {str(k): v for k, v in sorted(ge.order_histogram.items())},
        "exponent_ok": exponent_check(ge, P.order_sl()),
    }
    if args.simple:
        out["simple_spectrum"] = sorted(ge.projective_spectrum())
    return "spectrum", out, out["order"] == out["order_formula"] and out["exponent_ok"]


def cmd_cover(args):
    from .matgrp.cover import cover_spectrum, literal_cover_orders, module_enum, parse_module

    P = _params(args)
    ge = module_enum(P, parse_module(args.module), args.cap)
    res = cover_spectrum(ge)
    out = res.to_json()
    ok = True
    if args.literal:
        lit = literal_cover_orders(ge)
        ok = lit == res.cover_orders
        out["literal_orders"] = sorted(lit)
        out["literal_matches_rule"] = ok
    return "cover-spectrum", out, ok


def cmd_pipeline(args):
    from .pipeline import run_pipeline

    r = run_pipeline(_params(args), args.module, oracle=args.oracle, seed=args.seed)
    return "new-order-pipeline", r.to_json(), r.ok


def cmd_verify(args):
    from . import acceptance as acc

    name = args.check
    if name == "all":
        results = [fn() for fn in acc.CRITERIA.values()]
    elif name in acc.CRITERIA:
        fn = acc.CRITERIA[name]
        kw = {}
        if name == "zsigmondy":
            kw = {"t_max": args.t_max, "n_max": args.n_max or 30}
        elif name == "qstar":
            kw = {"q_max": args.q_max, "n_max": args.n_max or 12, "s_max": args.s_max}
        elif name == "decompositions" and args.n_max:
            kw = {"n_max": args.n_max}
        elif name in ("spectra", "pmax", "cover-datum"):
            kw = {"cap": args.cap}
        elif name in ("pipeline", "weights"):
            kw = {"seed": args.seed}
        results = [fn(**kw) if kw else fn()]
    else:
        raise UsageError(f"unknown check {name!r}; choose from all, {', '.join(acc.CRITERIA)}")
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed is not False for r in results)
    return f"verify:{name}", {"criteria": [r.to_json() for r in results], "ok": ok}, ok


COMMANDS = {
    "primdiv": cmd_primdiv,
    "decompose": cmd_decompose,
    "maxorders": cmd_maxorders,
    "pmax": cmd_pmax,
    "element": cmd_element,
    "witness": cmd_witness,
    "spectrum": cmd_spectrum,
    "cover": cmd_cover,
    "pipeline": cmd_pipeline,
    "verify": cmd_verify,
}


def _echo(args) -> dict:
    skip = {"command", "format", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, sort_keys=True))
        return
    for key, value in doc.items():
        print(f"{key}: {json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    head = {"schema": SCHEMA, "command": args.command}
    try:
        enum_cap(args.cap)
        lemma, result, ok = COMMANDS[args.command](args)
    except (UsageError, ValueError, TooLarge) as exc:
        # every domain error in this package derives from ValueError
        doc = {**head, "lemma": args.command, "params": _echo(args), "error": f"{type(exc).__name__}: {exc}"}
        _emit(doc, args.format)
        return 2
    doc = {**head, "lemma": lemma, "params": _echo(args), "result": result, "ok": ok}
    _emit(doc, args.format)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
