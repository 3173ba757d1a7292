"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (reported as an ``error``
object), 2 when the ring, an element, a matrix or an ideal cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify
from .counting import (
    UnsupportedInputError,
    congruence_index,
    decompose_deterministic,
    mu_ideal,
    mu_total,
    newman_count,
)
from .hecke import BudgetExhaustedError, SamplerConfig, _probabilistic_run, hecke_multiply, reduction_check
from .matrices import mat_invariants
from .syntax import ParseError, parse_element, parse_ideal, parse_matrix, parse_ring

DOMAIN_ERRORS = (ValueError, ArithmeticError, ZeroDivisionError, BudgetExhaustedError, UnsupportedInputError)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dedekind-cosets",
                                description="Right cosets in double cosets of GL_2 over Z and quadratic rings.")
    p.add_argument("--ring", default="Z", help="'Z' or 'Q(sqrt,d)' (default: Z)")
    p.add_argument("--seed", type=int, default=None, help="sampler seed (random decompositions only)")
    p.add_argument("--budget", type=int, default=None, help="sample budget (random decompositions only)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("invariants", help="determinantal divisors and fundamental factors").add_argument("matrix")
    sub.add_parser("mu", help="number of right cosets in UAU").add_argument("matrix")
    s = sub.add_parser("mu-ideal", help="right cosets with a prescribed first-column ideal")
    s.add_argument("matrix")
    s.add_argument("ideal")
    sub.add_parser("decompose", help="deterministic right transversal").add_argument("matrix")
    sub.add_parser("decompose-random", help="randomized right transversal").add_argument("matrix")
    s = sub.add_parser("hecke-mult", help="product of two double cosets in the Hecke algebra")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--random", action="store_true", help="decompose with the random sampler")
    sub.add_parser("index", help="index of the congruence subgroup U^0[m]").add_argument("m")
    sub.add_parser("newman", help="right cosets of all matrices with determinant d").add_argument("d")
    s = sub.add_parser("reduction-check", help="value of 1_A * 1_B at diag(1, c)")
    for name in ("a", "b", "c"):
        s.add_argument(name)
    s = sub.add_parser("verify", help="run the built-in check suite")
    s.add_argument("--scope", choices=("paper-tables", "properties", "all"), default="all")
    return p


def _sampler_allowed(args) -> bool:
    return args.command == "decompose-random" or (args.command == "hecke-mult" and args.random)


def _config(args) -> SamplerConfig:
    return SamplerConfig(seed=args.seed if args.seed is not None else 0)


def _ideal_view(ideal):
    return None if ideal is None else {**ideal.to_json(), "text": str(ideal)}


def _execute(args, ring) -> dict:
    cmd = args.command
    echo = {k: v for k, v in vars(args).items()
            if k in ("matrix", "ideal", "left", "right", "m", "d", "a", "b", "c")}
    out: dict = {"ring": str(ring), "command": cmd, "input": echo}
    if cmd == "invariants":
        inv = mat_invariants(parse_matrix(ring, args.matrix))
        out["rank"] = inv.rank
        for name in ("delta1", "delta2", "e1", "e2", "f1", "f2", "g"):
            out[name] = _ideal_view(getattr(inv, name))
    elif cmd == "mu":
        out["mu"] = mu_total(parse_matrix(ring, args.matrix))
    elif cmd == "mu-ideal":
        out["mu_ideal"] = mu_ideal(parse_matrix(ring, args.matrix), parse_ideal(ring, args.ideal))
    elif cmd == "decompose":
        reps = decompose_deterministic(parse_matrix(ring, args.matrix))
        out["count"] = len(reps)
        out["representatives"] = [r.to_json() for r in reps]
    elif cmd == "decompose-random":
        cfg = _config(args)
        reps, cycles = _probabilistic_run(parse_matrix(ring, args.matrix), cfg, args.budget)
        out["seed"] = cfg.seed
        out["count"] = len(reps)
        out["loop_cycles"] = cycles
        out["representatives"] = [r.to_json() for r in reps]
    elif cmd == "hecke-mult":
        A, B = parse_matrix(ring, args.left), parse_matrix(ring, args.right)
        decomposer = _config(args) if args.random else None
        h = hecke_multiply(A, B, decomposer, args.budget)
        out["terms"] = [{"coefficient": c, "representative": h.witness[k].to_json(), **k.to_json()}
                        for k, c in h.sorted_terms()]
    elif cmd == "index":
        out["index"] = congruence_index(parse_element(ring, args.m))
    elif cmd == "newman":
        out["newman"] = newman_count(parse_element(ring, args.d))
    elif cmd == "reduction-check":
        a, b, c = (parse_element(ring, v) for v in (args.a, args.b, args.c))
        out["value"] = reduction_check(a, b, c)
    return out


def _text(out: dict) -> str:
    lines = []
    for key, value in out.items():
        if key in ("ring", "command", "input"):
            continue
        if key == "representatives":
            lines += [f"  {r}" for r in value]
        elif key == "terms":
            lines += [f"  {t['coefficient']} * [{t['representative']}]" for t in value]
        elif isinstance(value, dict) and "text" in value:
            lines.append(f"{key}: {value['text']}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(payload: dict, fmt: str, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        stream.write(_text(payload) + "\n")


def _run_verify(args) -> int:
    checks = verify.run(args.scope)
    failed = sum(not c.passed for c in checks)
    if args.format == "json":
        payload = {"checks": [{"name": c.name, "passed": c.passed, "expected": repr(c.expected),
                               "computed": repr(c.computed)} for c in checks], "failed": failed}
        _emit(payload, "json")
    else:
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status}  {c.name}" + ("" if c.passed else f"  expected {c.expected!r}, got {c.computed!r}"))
        print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if (args.seed is not None or args.budget is not None) and not _sampler_allowed(args):
        parser.error("--seed/--budget are only valid with decompose-random and hecke-mult --random")
    if args.budget is not None and args.budget < 1:
        parser.error("--budget must be positive")
    if args.command == "verify":
        return _run_verify(args)
    try:
        ring = parse_ring(args.ring)
        out = _execute(args, ring)
    except ParseError as exc:
        _emit({"error": {"type": "parse", "message": str(exc)}}, args.format, sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}}, args.format)
        return 1
    _emit(out, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
