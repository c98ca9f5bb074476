"""Command line front end.

Subcommands: dims, check, integrate, decompose, branch, fischer.  Ranges are
written `a..b` (or a single integer).  Output formats: a human table (default),
`--format json` and `--format csv`; JSON reports round-trip bit-exactly through
`load_report`.  Exit codes: 0 pass, 1 verification failure, 2 usage or parse
error.  The environment variable SUPERH_THREADS caps internal parallelism.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .superalgebra import ParseError, parse
from .harmonic import decompose_Hk, dim_Hk, fischer
from .integration import pizzetti, supersphere_integral_phi
from .modules import branching, in_window, simple_dim
from .checks import Report, SUITES, run_suite

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError
            return list(range(lo_i, hi_i + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N or A..B")


def report_to_dict(report: Report) -> dict:
    return {
        "command": report.command,
        "parameters": {k: list(map(list, v)) if k == "cells" else v
                       for k, v in report.parameters.items()},
        "rows": report.rows,
        "status": report.status,
        "counterexample": report.counterexample,
    }


def report_to_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, default=str)


def load_report(text: str) -> dict:
    return json.loads(text)


def report_to_csv(report: Report) -> str:
    out = io.StringIO()
    keys: list[str] = []
    for row in report.rows:
        for key in row:
            if key not in keys:
                keys.append(key)
    writer = csv.DictWriter(out, fieldnames=keys)
    writer.writeheader()
    for row in report.rows:
        writer.writerow({k: row.get(k, "") for k in keys})
    return out.getvalue()


def report_to_table(report: Report) -> str:
    lines = [f"{report.command}  [{report.status}]"]
    keys: list[str] = []
    for row in report.rows:
        for key in row:
            if key not in keys:
                keys.append(key)
    if keys:
        widths = {k: max(len(str(k)), *(len(str(r.get(k, ""))) for r in report.rows))
                  for k in keys}
        lines.append("  ".join(str(k).ljust(widths[k]) for k in keys))
        for row in report.rows:
            lines.append("  ".join(str(row.get(k, "")).ljust(widths[k]) for k in keys))
    if report.counterexample:
        lines.append(f"counterexample: {report.counterexample}")
    return "\n".join(lines)


def emit(report: Report, fmt: str) -> None:
    if fmt == "json":
        print(report_to_json(report))
    elif fmt == "csv":
        print(report_to_csv(report), end="")
    else:
        print(report_to_table(report))


def cmd_dims(args) -> int:
    report = Report("dims", {"m": args.m, "n": args.n, "k": args.k})
    for m in args.m:
        for n in args.n:
            for k in args.k:
                row = {"m": m, "n": n, "k": k,
                       "dim_H": dim_Hk(m, n, k),
                       "dim_L": simple_dim(m, n, k),
                       "window": "yes" if in_window(m, n, k) else "no"}
                report.rows.append(row)
    emit(report, args.format)
    return report.exit_code


def cmd_check(args) -> int:
    cells = [(m, n) for m in args.m for n in args.n]
    k_max = max(args.k)
    report = run_suite(args.suite, cells, k_max, seed=args.seed)
    emit(report, args.format)
    return report.exit_code


def cmd_integrate(args) -> int:
    try:
        f = parse(args.expr)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = Report("integrate", {"expr": args.expr, "m": args.m[0], "n": args.n[0]})
    m, n = args.m[0], args.n[0]
    a = pizzetti(f, m, n)
    b = supersphere_integral_phi(f, m, n)
    report.rows.append({"method": "pizzetti", "value": str(a),
                        "q": str(a.q), "h": a.h})
    report.rows.append({"method": "phi-sharp", "value": str(b),
                        "q": str(b.q), "h": b.h})
    if a != b:
        report.fail("the two integration routes disagree")
    emit(report, args.format)
    return report.exit_code


def cmd_decompose(args) -> int:
    report = Report("decompose", {"m": args.m[0], "n": args.n[0], "k": args.k[0]})
    m, n, k = args.m[0], args.n[0], args.k[0]
    try:
        pieces = decompose_Hk(m, n, k)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for pc in pieces:
        report.rows.append({"l": pc.l, "p": pc.p, "q": pc.q, "dim": pc.dim})
    report.rows.append({"total": sum(pc.dim for pc in pieces),
                        "dim_H": dim_Hk(m, n, k)})
    emit(report, args.format)
    return report.exit_code


def cmd_branch(args) -> int:
    m, n, k = args.m[0], args.n[0], args.k[0]
    try:
        b = branching(m, n, k, explicit=args.explicit)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = Report("branch", {"m": m, "n": n, "k": k})
    if b.case == "not_completely_reducible":
        report.status = "degenerate"
        report.rows.append({"case": b.case})
    else:
        for l, d in b.branch:
            report.rows.append({"l": l, "dim": d})
        row = {"case": b.case, "total": sum(d for _, d in b.branch),
               "dim_L": simple_dim(m, n, k),
               "dim_identity": "pass" if b.dim_identity else "fail"}
        if b.explicit is not None:
            row["explicit"] = b.explicit
        report.rows.append(row)
        if not b.dim_identity or (b.explicit not in (None, "verified")):
            report.fail("branch verification failed")
    emit(report, args.format)
    return report.exit_code


def cmd_fischer(args) -> int:
    report = Report("fischer", {"m": args.m, "n": args.n, "k": args.k})
    for m in args.m:
        for n in args.n:
            for k in args.k:
                fd = fischer(m, n, k)
                report.rows.append({
                    "m": m, "n": n, "k": k,
                    "direct_sum": "yes" if fd.direct_sum else "no",
                    "blocks": " ".join(f"j={p.j}:dim={p.dim}" for p in fd.pieces),
                    "witness": fd.witness or "",
                })
    emit(report, args.format)
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superh",
        description="Exact harmonic analysis on (m|2n) superspace")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_common(p, need_k=True, k_default=None):
        p.add_argument("-m", type=parse_range, required=True,
                       help="bosonic dimension (N or A..B)")
        p.add_argument("-n", type=parse_range, required=True,
                       help="number of Grassmann pairs (N or A..B)")
        if need_k:
            kwargs = {"type": parse_range, "help": "degree (N or A..B)"}
            if k_default is None:
                kwargs["required"] = True
            else:
                kwargs["default"] = k_default
            p.add_argument("-k", **kwargs)
        p.add_argument("--format", choices=("human", "json", "csv"),
                       default="human")
        p.add_argument("--seed", type=int, default=20240,
                       help="seed for randomized property sampling")

    p = sub.add_parser("dims", help="dimension table of H_k and the simple module")
    add_common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("check", help="run a named verification suite")
    p.add_argument("suite", choices=SUITES)
    add_common(p, k_default=[6])
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("integrate", help="supersphere integral of a polynomial")
    p.add_argument("expr", help="polynomial, e.g. '2*x1^2 - xg1*xg2'")
    add_common(p, need_k=False)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("decompose", help="joint eigenspace pieces of H_k")
    add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("branch", help="branching of the simple module")
    add_common(p)
    p.add_argument("--explicit", action="store_true",
                   help="also verify the decomposition explicitly")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("fischer", help="radial decomposition of P_k")
    add_common(p)
    p.set_defaults(func=cmd_fischer)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ValueError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
