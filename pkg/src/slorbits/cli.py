"""Command line front end: ``slorbits <subcommand> ...``.

Exit codes: 0 success, 1 verification or validation failure, 2 usage error,
3 enumeration budget refusal.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from .arith import as_modulus, jordan_totient
from .errors import BudgetExceeded, DomainError, NotInSLError, SLOrbitsError, StructureError
from .linalg_mod import act, parse_matrix, parse_vector, sl_inverse
from .oracle import verify_all
from .orbits import census, crt_join, crt_split
from .sl_group import BUDGET_ENV, GroupSpec, default_budget, group_order, stabilizer_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _emit(args, text_out: str, json_obj) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(json_obj, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(text_out)


def _spec(args) -> GroupSpec:
    return GroupSpec.of(args.m, args.n)


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


def cmd_census(args) -> int:
    spec = _spec(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = census(spec)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.format == "json":
        sys.stdout.write(report.to_jsonl())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _spec(args)
    if spec.m < 2:
        raise UsageError("verify needs m >= 2; SL(1, Z_n) is trivial")
    report = verify_all(spec, _budget(args))
    sys.stdout.write(report.to_json() + "\n" if args.format == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_order(args) -> int:
    spec = _spec(args)
    order = group_order(spec)
    stab = stabilizer_order(spec) if spec.m >= 2 else None
    text = f"order\t{order}\n" + (f"stabilizer\t{stab}\n" if stab is not None else "")
    _emit(args, text, {"m": spec.m, "n": spec.n, "order": order, "stabilizer": stab})
    return EXIT_OK


def _vector_matrix(args):
    v = getattr(args, "v", None)
    a = parse_vector(v, args.n) if v is not None else None
    A = parse_matrix(args.A, args.n) if args.A is not None else None
    m = args.m
    for obj in (a, A):
        if obj is not None and m is not None and obj.m != m:
            raise UsageError(f"-m {m} does not match literal of dimension {obj.m}")
    return a, A


def cmd_act(args) -> int:
    a, A = _vector_matrix(args)
    b = act(a, A)
    _emit(args, f"{b}\n", {"n": args.n, "result": list(b.components)})
    return EXIT_OK


def cmd_inverse(args) -> int:
    _, A = _vector_matrix(args)
    B = sl_inverse(A)
    _emit(args, f"{B}\n", {"n": args.n, "inverse": [list(r) for r in B.entries]})
    return EXIT_OK


def cmd_jordan(args) -> int:
    value = jordan_totient(args.m, as_modulus(args.n))
    _emit(args, f"{value}\n", {"m": args.m, "n": args.n, "jordan": value})
    return EXIT_OK


def cmd_crt(args) -> int:
    p, q = args.p, args.q
    n = p * q
    if args.n is not None and args.n != n:
        raise UsageError(f"-n {args.n} is not p*q = {n}")
    if args.direction == "split":
        a = parse_vector(args.v, n)
        a1, a2 = crt_split(a, p, q)
        _emit(args, f"{a1} | {a2}\n", {"p": p, "q": q, "mod_p": list(a1), "mod_q": list(a2)})
    else:
        if args.w is None:
            raise UsageError("crt join needs -v (mod p part) and -w (mod q part)")
        joined = crt_join(parse_vector(args.v, p), parse_vector(args.w, q))
        _emit(args, f"{joined}\n", {"n": n, "result": list(joined)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slorbits",
        description="Orbits of Z_n^m under SL(m, Z_n): closed forms and brute-force checks.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument(
        "--budget", type=_positive, default=None,
        help=f"max enumeration candidates (default ${BUDGET_ENV} or 10^8)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help, m_required=True, n_required=True):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("-m", type=_positive, required=m_required, default=None)
        p.add_argument("-n", type=_positive, required=n_required, default=None)
        p.set_defaults(func=fn)
        return p

    add("census", cmd_census, "orbit census of Z_n^m")
    add("verify", cmd_verify, "check the closed forms against exhaustive search")
    add("order", cmd_order, "|SL(m, Z_n)| and the stabilizer order")
    add("jordan", cmd_jordan, "Jordan totient J_m(n)")
    p = add("act", cmd_act, "apply an SL matrix to a row vector", m_required=False)
    p.add_argument("-v", required=True, help="vector literal, e.g. 1,2")
    p.add_argument("-A", required=True, help='matrix literal, e.g. "1,1;0,1"')
    p = add("inverse", cmd_inverse, "inverse of an SL matrix via its adjugate", m_required=False)
    p.add_argument("-A", required=True, help='matrix literal, e.g. "2,1;3,2"')
    p = add("crt", cmd_crt, "Chinese remainder split/join of a vector", m_required=False, n_required=False)
    p.add_argument("direction", choices=("split", "join"))
    p.add_argument("-p", type=_positive, required=True)
    p.add_argument("-q", type=_positive, required=True)
    p.add_argument("-v", required=True, help="vector over Z_pq (split) or Z_p (join)")
    p.add_argument("-w", default=None, help="vector over Z_q (join only)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotInSLError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, DomainError, StructureError, ValueError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except SLOrbitsError as e:  # pragma: no cover - remaining internal failures
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
