"""Command-line front end.

Subcommands::

    qbic classify  (--gram FILE | --builtin NAME --q Q [--n N])
    qbic count     {points|lines|planes} (--gram FILE | --builtin NAME --q Q [--n N])
                   [--ext M] [--report]
    qbic formulas  [--q-max Q]
    qbic verify-suite [--q 2,3] [--max-n N] [--seed S] [--json PATH]

Exit codes: 0 success, 1 parse error, 2 ambiguous classification,
3 enumeration range exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .builtin_forms import builtin_form
from .errors import AmbiguousMatch, GramParseError, QbicError, RangeExceeded
from .fano import count_isotropic, line_count_report
from .forms import classify
from .formulas import (betti_S, binomial_identity_H0CF, chern_and_chi,
                       cohomology_dims, fano_plucker_degree,
                       hermitian_count_formulas, zeta_point_count_S)
from .geometry import count_points
from .serialize import form_to_dict, load_form
from .verify import report_to_json, run_suite

EXIT_OK, EXIT_PARSE, EXIT_AMBIGUOUS, EXIT_RANGE = 0, 1, 2, 3


def _add_form_source(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--gram", help="path to a Gram-matrix JSON file")
    group.add_argument("--builtin", help="builtin form name (see builtin_forms)")
    sub.add_argument("--q", type=int, help="q = p^e for builtin forms (prime q supported directly)")
    sub.add_argument("--e", type=int, default=1, help="exponent e with q = p^e (default 1)")
    sub.add_argument("--n", type=int, help="projective dimension n for builtins that need it")
    sub.add_argument("--ambient", type=int, default=2,
                     help="ambient extension m: builtins live over GF(q^(2m)) (default 2)")


def _resolve_form(args):
    if args.gram:
        return load_form(args.gram)
    if args.q is None:
        raise GramParseError("--builtin requires --q")
    p, e = _split_q(args.q, args.e)
    return builtin_form(args.builtin, p, e, args.n, args.ambient)


def _split_q(q: int, e: int):
    """Interpret --q as p^e; with the default e=1, q itself must be prime."""
    root = round(q ** (1.0 / e))
    for cand in (root - 1, root, root + 1):
        if cand >= 2 and cand**e == q:
            return cand, e
    raise GramParseError(f"q = {q} is not a perfect {e}-th power")


def cmd_classify(args) -> int:
    f = _resolve_form(args)
    sig = classify(f)
    out = {"type": sig.format(), "dim": f.dim, "q": f.q, "rank": f.rank()}
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(sig.format())
    return EXIT_OK


def cmd_count(args) -> int:
    f = _resolve_form(args)
    m = args.ext
    if args.kind == "points":
        value = count_points(f, m)
    elif args.kind == "lines":
        value = count_isotropic(f, 1, m)
    else:
        value = count_isotropic(f, 2, m)
    out = {"kind": args.kind, "extension": m, "count": value}
    if args.report and args.kind == "lines":
        out["report"] = line_count_report(f, m)
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(value)
        if args.report and args.kind == "lines":
            print(json.dumps(out["report"], sort_keys=True, indent=2))
    return EXIT_OK


def cmd_formulas(args) -> int:
    table = []
    for q in range(2, args.q_max + 1):
        c1sq, c2, chi = chern_and_chi(q)
        row = {
            "q": q,
            "c1_squared": c1sq,
            "c2": c2,
            "chi_O": chi,
            "noether_holds": 12 * chi == c1sq + c2,
            "betti_S": list(betti_S(q)),
            "lines_on_threefold": zeta_point_count_S(q, 1),
            "plucker_degree_n4": fano_plucker_degree(q, 4),
            "hermitian_points_n3": hermitian_count_formulas(q, 3)[0],
            "binomial_identity": binomial_identity_H0CF(q),
        }
        if _is_prime(q):
            h0, h1, h2 = cohomology_dims(q)
            row["coherent_h"] = [h0, h1, h2]
            row["euler_consistent"] = h0 - h1 + h2 == chi
        table.append(row)
    print(json.dumps({"formulas": table}, sort_keys=True, indent=None if args.json else 2))
    return EXIT_OK


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def cmd_verify_suite(args) -> int:
    qs = [int(x) for x in args.q.split(",") if x]
    report = run_suite(qs, args.max_n, seed=args.seed, threads=args.threads)
    text = report_to_json(report)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for chk in report["checks"]:
        print(f"[{chk['status']:>13s}] {chk['name']} ({chk['runtime_ms']} ms)")
    print(f"passed={report['passed']} failed={report['failed']} skipped={report['skipped']}")
    return EXIT_OK if report["failed"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qbic", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="geometric type of a form")
    _add_form_source(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("count", help="count points/lines/planes on the hypersurface")
    sp.add_argument("kind", choices=["points", "lines", "planes"])
    _add_form_source(sp)
    sp.add_argument("--ext", type=int, default=1, help="count over GF(q^(2m)) with m = EXT")
    sp.add_argument("--report", action="store_true", help="add the incidence report (lines only)")
    sp.set_defaults(fn=cmd_count)

    sp = sub.add_parser("formulas", help="closed-form invariants and consistency verdicts")
    sp.add_argument("--q-max", type=int, default=10)
    sp.set_defaults(fn=cmd_formulas)

    sp = sub.add_parser("verify-suite", help="run the acceptance checks")
    sp.add_argument("--q", default="2,3", help="comma-separated q values")
    sp.add_argument("--max-n", type=int, default=5, dest="max_n")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--json", dest="json_out", metavar="PATH", help="write the JSON report here")
    sp.set_defaults(fn=cmd_verify_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except GramParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AmbiguousMatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except RangeExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except QbicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
