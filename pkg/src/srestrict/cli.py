"""Command-line front end: exact tables and verification suites.

Exit codes: 0 success, 1 a route disagreement or verification mismatch,
2 usage/parse error, 3 oracle guardrail violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from srestrict import fubini as fu
from srestrict import lonesum as lo
from srestrict import polybern as pb
from srestrict import riordan as ri
from srestrict import stirling as st
from srestrict.blockset import parse_set
from srestrict.oracle import GuardrailError
from srestrict.series import egf_coeff, egf_coeff2
from srestrict.verify import SUITES, run_suite

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GUARDRAIL = 3


class RouteMismatch(RuntimeError):
    pass


def render(value: Any) -> Any:
    """Exact values as JSON-safe data: ints stay ints, other rationals become 'p/q'."""
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or isinstance(value, (int, str)) or value is None:
        return value
    if isinstance(value, dict):
        return {k: render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    return str(value)


def _agree(label: str, a, b) -> None:
    if a != b:
        raise RouteMismatch(f"{label}: routes disagree ({a} vs {b})")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _int_range(text: str) -> list[int]:
    """'5' -> [5]; 'a:b' -> a..b inclusive."""
    if ":" in text:
        lo_, hi = text.split(":", 1)
        a, b = int(lo_), int(hi)
        if a > b:
            raise argparse.ArgumentTypeError(f"empty range {text}")
        return list(range(a, b + 1))
    return [int(text)]


def _set_arg(text: str):
    try:
        return parse_set(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _order(args, needed: int) -> int:
    order = args.order if args.order is not None else needed + 4
    if order < needed:
        raise argparse.ArgumentTypeError(f"--order {order} is below the largest index {needed}")
    return order


def cmd_stirling(args) -> dict:
    S, N = args.set, args.n
    tri = st.stirling_triangle(S, N)
    rows = []
    for n in range(N + 1):
        row = [tri[n, k] for k in range(N + 1)]
        _agree(f"stirling n={n}", row[: n + 1], [st.stirling_direct(n, k, S) for k in range(n + 1)])
        rows.append(row)
    return {
        "columns": ["n"] + [str(k) for k in range(N + 1)],
        "rows": [[n] + r for n, r in enumerate(rows)],
        "values": [{"n": n, "k": k, "value": rows[n][k]} for n in range(N + 1) for k in range(n + 1)],
        "routes": ["recurrence", "direct"],
    }


def cmd_bell(args) -> dict:
    S, N = args.set, args.n
    values, rows = [], []
    for n in range(N + 1):
        b = st.bell_number(n, S)
        poly = st.bell_polynomial(n, S)
        _agree(f"bell n={n}", b, poly(1))
        values.append({"n": n, "value": b, "polynomial": str(poly)})
        rows.append([n, b, str(poly)])
    return {"columns": ["n", "bell", "polynomial"], "rows": rows, "values": values,
            "routes": ["stirling-row-sum", "polynomial-at-1"]}


def cmd_fubini(args) -> dict:
    S, N = args.set, args.n
    seq = fu.fubini_sequence(S, _order(args, N)).values
    values, rows = [], []
    for n in range(N + 1):
        v = fu.fubini(n, S)
        _agree(f"fubini n={n}", v, seq[n])
        values.append({"n": n, "value": v})
        rows.append([n, v])
    return {"columns": ["n", "fubini"], "rows": rows, "values": values, "routes": ["sum", "egf"]}


def _read_matrix(path: str) -> lo.BinaryMatrix:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return lo.BinaryMatrix.from_text(text)


def _matrix_report(args, decomposable: bool) -> dict:
    M = _read_matrix(args.matrix)
    info: dict[str, Any] = {"n": M.n, "k": M.k, "lonesum": lo.is_lonesum(M)}
    if info["lonesum"]:
        pp = lo.decode(M)
        info["row_blocks"] = pp.row_blocks
        info["col_blocks"] = pp.col_blocks
        info["zero_rows"] = pp.zero_rows
        info["zero_cols"] = pp.zero_cols
        _agree("decode round trip", lo.reconstruct(pp, M.n, M.k), M)
    if decomposable:
        rep = lo.decompose(M)
        info["decomposable"] = rep.decomposable
        info["order"] = rep.order
        info["components"] = rep.components
    rows = [[k, json.dumps(render(v))] for k, v in info.items()]
    return {"columns": ["field", "value"], "rows": rows, "values": [info],
            "routes": ["decode", "reconstruct"]}


def cmd_lonesum(args) -> dict:
    if args.matrix:
        return _matrix_report(args, decomposable=False)
    S1, S2 = args.set1, args.set2
    N, K = args.n, args.k
    nx, ny = _order(args, N), _order(args, K)
    egf = lo.lonesum_egf(S1, S2, nx, ny, args.variant)
    values, rows = [], []
    for n in range(N + 1):
        row = []
        for k in range(K + 1):
            v = int(egf_coeff2(egf, n, k))
            if args.variant == "no_zeros":
                _agree(f"lonesum ({n},{k})", v, lo.count_restricted(n, k, S1, S2))
            row.append(v)
            values.append({"n": n, "k": k, "value": v})
        rows.append([n] + row)
    routes = ["bivariate-egf", "closed-form"] if args.variant == "no_zeros" else ["bivariate-egf"]
    return {"columns": ["n"] + [str(k) for k in range(K + 1)], "rows": rows,
            "values": values, "routes": routes}


def cmd_decomposable(args) -> dict:
    if args.matrix:
        return _matrix_report(args, decomposable=True)
    S1, S2 = args.set1, args.set2
    N, K = args.n, args.k
    nx, ny = _order(args, N), _order(args, K)
    total = lo.decomposable_egf(S1, S2, nx, ny, None)
    if args.r is not None:
        target = lo.decomposable_egf(S1, S2, nx, ny, args.r)
        routes = ["order-r-egf"]
    else:
        target = total
        per_r = [lo.decomposable_egf(S1, S2, nx, ny, r) for r in range(min(N, K) + 1)]
        routes = ["exp-egf", "sum-over-r"]
    values, rows = [], []
    for n in range(N + 1):
        row = []
        for k in range(K + 1):
            v = int(egf_coeff2(target, n, k))
            if args.r is None:
                _agree(f"decomposable ({n},{k})", v,
                       sum(int(egf_coeff2(p, n, k)) for p in per_r[: min(n, k) + 1]))
            row.append(v)
            values.append({"n": n, "k": k, "value": v})
        rows.append([n] + row)
    return {"columns": ["n"] + [str(k) for k in range(K + 1)], "rows": rows,
            "values": values, "routes": routes}


def cmd_polybernoulli(args) -> dict:
    S, N, ks = args.set, args.n, args.k
    order = _order(args, N)
    values, rows = [], []
    for k in ks:
        egf = pb.pb_egf_series(k, S, order)
        for n in range(N + 1):
            v = pb.poly_bernoulli(n, k, S)
            _agree(f"poly-Bernoulli n={n} k={k}", v, egf_coeff(egf, n))
            values.append({"n": n, "k": k, "value": v})
    for n in range(N + 1):
        rows.append([n] + [render(pb.poly_bernoulli(n, k, args.set)) for k in ks])
    return {"columns": ["n"] + [str(k) for k in ks], "rows": rows, "values": values,
            "routes": ["finite-sum", "polylog-egf"]}


def cmd_riordan(args) -> dict:
    S, N = args.set, args.n
    M = ri.stirling_matrix(S, N + 1)
    _agree("riordan vs triangle", M.as_int_rows(),
           [[st.stirling_triangle(S, N)[n, k] for k in range(N + 1)] for n in range(N + 1)])
    if args.inverse:
        T = ri.inverse(M)
        _agree("orthogonality", ri.matmul(M.entries, T), ri.identity_matrix(N + 1))
        mat = [[int(v) for v in row] for row in T]
        routes = ["forward-substitution", "orthogonality"]
    else:
        mat = M.as_int_rows()
        routes = ["riordan-column-egf", "recurrence"]
    return {
        "columns": ["n"] + [str(k) for k in range(N + 1)],
        "rows": [[n] + r for n, r in enumerate(mat)],
        "values": [{"n": n, "k": k, "value": mat[n][k]} for n in range(N + 1) for k in range(n + 1)],
        "routes": routes,
    }


def cmd_verify(args) -> dict:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    values, rows = [], []
    routes: list[str] = []
    failure = None
    for name in names:
        rep = run_suite(name, max_n=args.max_n, max_cells=args.max_cells, workers=args.workers)
        routes += [f"{name}:{r}" for r in rep.routes]
        entry = {"suite": name, "checks": rep.checks, "ok": rep.ok,
                 "counterexample": str(rep.mismatch) if rep.mismatch else None}
        values.append(entry)
        rows.append([name, rep.checks, "pass" if rep.ok else "FAIL", entry["counterexample"] or ""])
        if not rep.ok:
            failure = rep.mismatch
            break
    return {"columns": ["suite", "checks", "status", "counterexample"], "rows": rows,
            "values": values, "routes": routes, "failure": failure}


COMMANDS = {
    "stirling": cmd_stirling,
    "bell": cmd_bell,
    "fubini": cmd_fubini,
    "lonesum": cmd_lonesum,
    "decomposable": cmd_decomposable,
    "polybernoulli": cmd_polybernoulli,
    "riordan": cmd_riordan,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srestrict", description="Exact S-restricted combinatorial number tables."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    common.add_argument("--order", type=_nonneg, default=None,
                        help="truncation order for series routes (default: max index + 4)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("stirling", "bell", "fubini", "riordan"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--set", type=_set_arg, default=parse_set("all"), metavar="S")
        p.add_argument("--n", type=_nonneg, required=True, help="largest n")
        if name == "riordan":
            p.add_argument("--inverse", action="store_true", help="emit the inverse triangle T_S")

    for name in ("lonesum", "decomposable"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--set1", type=_set_arg, default=parse_set("all"), metavar="S1",
                       help="restriction on rows")
        p.add_argument("--set2", type=_set_arg, default=parse_set("all"), metavar="S2",
                       help="restriction on columns")
        p.add_argument("--n", type=_nonneg, default=0, help="largest row count")
        p.add_argument("--k", type=_nonneg, default=0, help="largest column count")
        p.add_argument("--matrix", metavar="FILE",
                       help="analyse one matrix given as 0/1 lines ('-' for stdin)")
        if name == "lonesum":
            p.add_argument("--variant", choices=["no_zeros", "with_zeros"], default="no_zeros")
        else:
            p.add_argument("--r", type=_nonneg, default=None, help="decomposition order")

    p = sub.add_parser("polybernoulli", parents=[common])
    p.add_argument("--set", type=_set_arg, default=parse_set("all"), metavar="S")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_int_range, default=[1], help="k or a:b (inclusive)")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--max-n", type=_nonneg, default=9)
    p.add_argument("--max-cells", type=_nonneg, default=12)
    p.add_argument("--workers", type=_nonneg, default=1)
    return parser


def _params(args) -> dict:
    skip = {"command", "format"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k] = str(v) if not isinstance(v, (int, bool, list)) else v
    return out


def emit(args, doc: dict, out) -> None:
    if args.format == "json":
        payload = {
            "command": args.command,
            "params": _params(args),
            "values": render(doc["values"]),
            "provenance": {"routes_compared": doc["routes"]},
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(doc["columns"])
        for row in doc["rows"]:
            w.writerow(render(row))
        out.write(buf.getvalue())
    else:
        table = [doc["columns"]] + [[str(c) for c in render(r)] for r in doc["rows"]]
        widths = [max(len(str(r[i])) for r in table if i < len(r)) for i in range(len(table[0]))]
        for r in table:
            out.write("  ".join(str(c).rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardrailError as exc:
        print(f"guardrail: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL
    except RouteMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (OSError, ValueError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(args, doc, out)
    if doc.get("failure") is not None:
        print(f"first counterexample: {doc['failure']}", file=sys.stderr)
        return EXIT_MISMATCH
    return 0


if __name__ == "__main__":
    sys.exit(main())
