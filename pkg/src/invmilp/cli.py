"""Command-line front end: ``invmilp <command> --instance FILE ...``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional

from . import decision as dec
from .bruteforce import enumerate_region
from .errors import DomainError, InvMilpError
from .inverse import Cut, fenchel_separate, solve_inverse
from .io import (
    ParseError,
    RunResult,
    certificate_from_json,
    certificate_to_json,
    emit_result,
    format_inverse,
    format_trace_table,
    parse_document,
    trace_rows,
)
from .milp import solve_milp
from .rational import Norm, parse_rational

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _vector_arg(text: str):
    parts = text.replace(",", " ").split()
    return tuple(_rational_arg(p) for p in parts)


def _doc(args):
    doc = parse_document(_read(args.instance))
    if args.norm is not None:
        doc = type(doc)(doc.forward, doc.c, doc.x0, Norm(args.norm))
    return doc


def _emit(result: RunResult, out=None):
    (out or sys.stdout).write(emit_result(result))


# -- command handlers; each returns an exit code -----------------------------

def cmd_solve_inverse(args) -> int:
    doc = _doc(args)
    inv = doc.inverse()
    sol = solve_inverse(inv)
    rows = trace_rows(sol.trace, inv.c, inv.norm)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            if args.trace.endswith(".txt"):
                fh.write(format_trace_table(rows))
            else:
                fh.write(emit_result(RunResult("trace", trace=rows)))
    _emit(RunResult(
        "solve-inverse",
        {"norm": inv.norm.value},
        {
            "status": sol.trace.outcome,
            "theta_star": sol.theta_star,
            "d_star": sol.d_star,
            "iterations": len(sol.trace.iterations),
        },
        rows,
    ))
    return EXIT_OK


def cmd_solve_forward(args) -> int:
    doc = _doc(args)
    d = args.d if args.d is not None else doc.c
    if d is None:
        raise UsageError("solve-forward needs --d or an 'estimate' line")
    out = solve_milp(doc.forward, d)
    _emit(RunResult(
        "solve-forward",
        {"d": d},
        {"status": out.tag, "argmax": out.argmax, "value": out.value, "ray": out.ray,
         "nodes": out.nodes},
    ))
    return EXIT_OK


def cmd_separate(args) -> int:
    doc = _doc(args)
    if doc.x0 is None:
        raise ParseError("target required for separate")
    res = fenchel_separate(doc.forward, doc.x0)
    if isinstance(res, Cut):
        outcome = {"result": "Cut", "d": res.d, "beta": res.beta}
    else:
        outcome = {
            "result": "InHull",
            "points": tuple(p for p, _ in res.weights),
            "weights": tuple(w for _, w in res.weights),
        }
    _emit(RunResult("separate", {"point": doc.x0}, outcome))
    return EXIT_OK


_FORWARD = {"mpvp": dec.decide_mpvp, "mdvp": dec.decide_mdvp, "movp": dec.decide_movp}
_INVERSE = {"impvp": dec.decide_impvp, "imdvp": dec.decide_imdvp, "imovp": dec.decide_imovp}


def cmd_decide(args) -> int:
    doc = _doc(args)
    if args.problem in _FORWARD:
        d = args.d if args.d is not None else doc.c
        if d is None:
            raise UsageError(f"{args.problem} needs --d or an 'estimate' line")
        ans = _FORWARD[args.problem](args.value, doc.forward, d)
        extra = {"d": d}
    else:
        ans = _INVERSE[args.problem](args.value, doc.inverse())
        extra = {"norm": doc.norm.value}
    _emit(RunResult("decide", dict(problem=args.problem, value=args.value, **extra),
                    {"answer": ans.value}))
    return EXIT_OK if ans else EXIT_NO


def cmd_reduce(args) -> int:
    doc = _doc(args)
    if doc.c is None:
        raise ParseError("estimate required for reduce")
    if args.kind == "mdvp-impvp":
        art = dec.reduce_mdvp_to_impvp(args.alpha, doc.forward, doc.c)
        source = dec.decide_mdvp(args.alpha, doc.forward, doc.c)
        reduced_inv = art.inverse_instance(doc.forward, doc.c, doc.norm)
        reduced = dec.decide_impvp(art.gamma_out, reduced_inv)
    else:
        art = dec.reduce_mpvp_to_imdvp(args.alpha, doc.forward, doc.c, args.nu)
        source = dec.decide_mpvp(args.alpha, doc.forward, doc.c)
        reduced_inv = art.inverse_instance(doc.forward, doc.c, doc.norm)
        reduced = dec.decide_imdvp(art.gamma_out, reduced_inv)
    _emit(RunResult(
        "reduce",
        {"kind": args.kind, "alpha": args.alpha},
        {
            "x_target": art.x_target,
            "epsilon": art.epsilon,
            "delta": art.delta,
            "nu": art.nu,
            "gamma_out": art.gamma_out,
            "source_answer": source.value,
            "reduced_answer": reduced.value,
            "reduced_instance": format_inverse(reduced_inv),
        },
    ))
    return EXIT_OK


_CLAIMS = {"impvp-no": dec.IMPVP_NO, "imdvp-yes": dec.IMDVP_YES}


def cmd_certificate(args) -> int:
    doc = _doc(args)
    inv = doc.inverse()
    if args.action == "build":
        if args.value is None:
            raise UsageError("certificate build needs --value")
        cert = dec.build_certificate(inv, args.value, _CLAIMS[args.claim])
        if cert is None:
            _emit(RunResult("certificate", {"action": "build", "claim": args.claim,
                                            "value": args.value}, {"certificate": None}))
            return EXIT_NO
        text = certificate_to_json(cert)
        if args.cert:
            with open(args.cert, "w", encoding="utf-8") as fh:
                fh.write(text)
        sys.stdout.write(text)
        return EXIT_OK
    if not args.cert:
        raise UsageError("certificate verify needs --cert FILE")
    cert = certificate_from_json(_read(args.cert))
    ok = dec.verify_certificate(cert, inv)
    _emit(RunResult("certificate", {"action": "verify"}, {"valid": ok, "claim": cert.claim}))
    return EXIT_OK if ok else EXIT_NO


def cmd_enumerate(args) -> int:
    doc = _doc(args)
    region = enumerate_region(doc.forward, doc.x0)
    outcome = {"points": region.points, "hull_vertices": region.hull_vertices,
               "count": len(region.points)}
    outcome["nu"] = dec.vertex_complexity(doc.forward, doc.x0)
    _emit(RunResult("enumerate", {}, outcome))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invmilp", description="Exact inverse MILP toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", required=True, help="instance file, '-' for stdin")
    common.add_argument("--norm", choices=["l1", "linf"], help="override the file's norm")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve-inverse", parents=[common], help="cutting-plane inverse solve")
    s.add_argument("--trace", help="write the iteration table (JSON, or text for *.txt)")
    s.set_defaults(func=cmd_solve_inverse)

    s = sub.add_parser("solve-forward", parents=[common], help="max d.x over S")
    s.add_argument("--d", type=_vector_arg, help="objective, e.g. '1/2 1/2'")
    s.set_defaults(func=cmd_solve_forward)

    s = sub.add_parser("separate", parents=[common], help="Fenchel separation of the target")
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("decide", parents=[common], help="decision problems")
    s.add_argument("problem", choices=sorted(_FORWARD) + sorted(_INVERSE))
    s.add_argument("--value", type=_rational_arg, required=True, help="alpha or gamma")
    s.add_argument("--d", type=_vector_arg, help="forward objective (default: estimate)")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("reduce", parents=[common], help="build a reduced inverse instance")
    s.add_argument("kind", choices=["mdvp-impvp", "mpvp-imdvp"])
    s.add_argument("--alpha", type=_rational_arg, required=True)
    s.add_argument("--nu", type=int, help="vertex complexity override")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("certificate", parents=[common], help="build or verify certificates")
    s.add_argument("action", choices=["build", "verify"])
    s.add_argument("--value", type=_rational_arg, help="gamma")
    s.add_argument("--claim", choices=sorted(_CLAIMS), default="impvp-no")
    s.add_argument("--cert", help="certificate file (written by build, read by verify)")
    s.set_defaults(func=cmd_certificate)

    s = sub.add_parser("enumerate", parents=[common], help="list S and hull vertices")
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as e:
        print(f"invmilp: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, InvMilpError) as e:
        print(f"invmilp: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
