"""Command-line interface.

Commands: ``constants`` (exact rational tables), ``verify`` (margin
certificates over a test suite), ``identity`` (substitution and estimate
identities), ``sharpness`` (quotient tables approaching a constant), and
``halfspace`` (the upper half-space corollaries).  Output formats: text,
canonical JSON (sorted keys, no timestamps), and long-form CSV with columns
(case, N, function_id, term, value).

Exit codes: 0 all verdicts pass, 1 at least one verdict failed, 2 numerical
or internal failure, 64 usage or hypothesis error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .constants import CaseSpec, constant_table
from .errors import HypothesisError, InternalConsistencyError, QuadratureError
from .halfspace import (
    PlaneQuadratureSpec,
    check_pf1,
    check_pf2,
    halfspace_suite,
    margin_halfspace,
    margin_hardy_mazya,
)
from .identities import check_1d_lemmas, check_estimate1, check_estimate2, check_ph1, check_trans1
from .profiles import load_suite, suite_version
from .quadrature import QuadratureSpec
from .reports import dumps_csv, dumps_json, encode_fraction, identity_csv_rows, margin_csv_rows
from .verify import (
    margin_general,
    margin_thm21,
    margin_poincare_hardy,
    margin_rellich,
    margin_yang,
    sharpness_probe,
)

__all__ = ["main"]

_CSV_HEADER = ("case", "N", "function_id", "term", "value")
_OUTDIR_ENV = "POINCARE_HARDY_OUTDIR"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; the contract here is >= 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="poincare-hardy", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text", help="output format")
        p.add_argument(
            "--out",
            type=Path,
            default=None,
            help=f"output file (default: stdout, or ${_OUTDIR_ENV}/<auto-name> if set)",
        )

    def add_quad(p):
        p.add_argument("--tol", type=float, default=None, help="verdict tolerance")
        p.add_argument("--panels", type=int, default=None, help="quadrature panels per axis")
        p.add_argument("--nodes", type=int, default=None, help="Gauss-Legendre nodes per panel")
        p.add_argument("--rmax", type=float, default=None, help="override integration radius")
        p.add_argument("--doublings", type=int, default=None, help="panel doubling budget")

    c = sub.add_parser("constants", help="exact rational constant table for a case (k, l, N)")
    c.add_argument("--k", type=int, required=True, help="left derivative order")
    c.add_argument("--l", type=int, default=0, help="right derivative order (default 0)")
    c.add_argument("--N", type=int, required=True, help="hyperbolic dimension")
    add_common(c)

    v = sub.add_parser("verify", help="numerical margin certificates over a test suite")
    v.add_argument(
        "--case",
        choices=("thm21", "rellich", "poincare", "yang", "general", "hardy1d"),
        required=True,
        help="which inequality to certify",
    )
    v.add_argument("--N", type=int, default=None, help="hyperbolic dimension (ignored for hardy1d)")
    v.add_argument("--beta", type=int, default=0, help="weight exponent for --case yang")
    v.add_argument("--k", type=int, default=None, help="left order for --case general")
    v.add_argument("--l", type=int, default=None, help="right order for --case general")
    v.add_argument("--suite", default="standard", help="test function suite name")
    add_quad(v)
    add_common(v)

    i = sub.add_parser("identity", help="substitution and estimate identity residuals")
    i.add_argument("--which", choices=("ph1", "trans1", "estimate1", "estimate2"), required=True)
    i.add_argument("--N", type=int, default=5, help="hyperbolic dimension (default 5)")
    i.add_argument("--n", type=int, default=0, help="spherical mode for the estimate identities")
    i.add_argument("--suite", default="standard", help="test function suite name")
    add_quad(i)
    add_common(i)

    s = sub.add_parser("sharpness", help="quotient table approaching a sharp constant")
    s.add_argument("--case", choices=("poincare_k1", "thm21_r2"), required=True)
    s.add_argument("--N", type=int, default=5, help="hyperbolic dimension (default 5)")
    s.add_argument("--params", default=None, help="comma-separated decay rates or bump centers")
    add_quad(s)
    add_common(s)

    h = sub.add_parser("halfspace", help="half-space corollaries and transplantation identities")
    h.add_argument("--which", choices=("rellich1", "rellich2", "hardy_mazya", "pf1", "pf2"), required=True)
    h.add_argument("--N", type=int, default=5, help="dimension (default 5)")
    h.add_argument("--alpha", type=float, action="append", default=None, help="power(s) for pf1/pf2")
    h.add_argument("--suite", default="standard", help="half-space suite name")
    h.add_argument("--tol", type=float, default=None, help="verdict tolerance")
    h.add_argument("--panels", type=int, default=None, help="quadrature panels per axis")
    h.add_argument("--nodes", type=int, default=None, help="Gauss-Legendre nodes per panel")
    h.add_argument("--doublings", type=int, default=None, help="panel doubling budget")
    add_common(h)
    return parser


def _qspec(args) -> QuadratureSpec:
    kw = {}
    if args.rmax is not None:
        kw["r_max"] = args.rmax
    if args.panels is not None:
        kw["panels"] = args.panels
    if args.nodes is not None:
        kw["nodes_per_panel"] = args.nodes
    if args.doublings is not None:
        kw["max_doublings"] = args.doublings
    return QuadratureSpec(**kw)


def _pspec(args) -> PlaneQuadratureSpec:
    kw = {}
    if args.panels is not None:
        kw["panels"] = args.panels
    if args.nodes is not None:
        kw["nodes_per_panel"] = args.nodes
    if args.doublings is not None:
        kw["max_doublings"] = args.doublings
    return PlaneQuadratureSpec(**kw)


def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cmd_constants(args):
    case = CaseSpec(args.k, args.l, args.N)
    table = constant_table(case)
    case_id = f"k{case.k}_l{case.l}"
    n_str = str(case.N)
    chain = {f"c{i}": value for i, value in enumerate(table.chain, start=1)}

    payload = {
        "command": "constants",
        "case": {"k": case.k, "l": case.l, "N": case.N},
        "poincare": encode_fraction(table.poincare),
        "chain": {name: encode_fraction(value) for name, value in chain.items()},
        "leading_large_r": encode_fraction(table.leading_large_r),
        "leading_small_r": encode_fraction(table.leading_small_r),
        "aux": {name: encode_fraction(value) for name, value in sorted(table.aux.items())},
    }
    named = [("poincare", table.poincare)]
    if case.k == 1 and case.l == 0:
        payload["hardy"] = encode_fraction(table.chain[0])
        named.append(("hardy", table.chain[0]))
    named.extend(chain.items())
    named.extend(sorted(table.aux.items()))

    rows = [(case_id, n_str, "exact", name, _rat(value)) for name, value in named]
    width = max(len(name) for name, _ in named)
    lines = [f"constants for k={case.k} l={case.l} N={case.N}"]
    lines.extend(f"  {name:<{width}}  {_rat(value)}  ({float(value)!r})" for name, value in named)
    return payload, rows, "\n".join(lines), 0


def _margin_line(r) -> str:
    status = "PASS" if r.verdict else "FAIL"
    n_part = "" if r.N is None else f" N={r.N}"
    return (
        f"{status} {r.case} {r.function_id}{n_part} "
        f"margin={r.margin:.6e} scale={r.scale:.6e} noise={r.noise:.3e}"
    )


def _identity_line(r) -> str:
    status = "PASS" if r.verdict else "FAIL"
    n_part = "" if r.n is None else f" n={r.n}"
    return (
        f"{status} {r.identity} {r.function_id} N={r.N}{n_part} "
        f"max_rel={r.max_rel_residual:.3e} max_abs={r.max_abs_residual:.3e}"
    )


def _finish_reports(command, extra, reports, suite_name, rows_fn, line_fn):
    all_pass = all(r.verdict for r in reports)
    payload = {
        "command": command,
        **extra,
        "suite": {"name": suite_name, "version": suite_version()},
        "reports": [r.to_dict() for r in reports],
        "all_pass": all_pass,
    }
    rows = [row for r in reports for row in rows_fn(r)]
    lines = [line_fn(r) for r in reports]
    passed = sum(1 for r in reports if r.verdict)
    lines.append(f"{'PASS' if all_pass else 'FAIL'}: {passed}/{len(reports)} checks passed")
    return payload, rows, "\n".join(lines), 0 if all_pass else 1


def _cmd_verify(args):
    qspec = _qspec(args)
    tol = args.tol if args.tol is not None else 1e-8
    suite = load_suite(args.suite)
    reports = []
    if args.case == "hardy1d":
        for u in suite:
            reports.extend(check_1d_lemmas(u, qspec, tol=tol))
        n_out = None
    else:
        if args.N is None:
            raise HypothesisError(f"--case {args.case} requires --N")
        n_out = args.N
        for u in suite:
            if args.case == "thm21":
                reports.append(margin_thm21(u, args.N, qspec, tol))
            elif args.case == "rellich":
                reports.append(margin_rellich(u, args.N, qspec, tol))
            elif args.case == "poincare":
                reports.append(margin_poincare_hardy(u, args.N, qspec, tol))
            elif args.case == "yang":
                reports.append(margin_yang(u, args.N, args.beta, qspec, tol))
            else:
                if args.k is None or args.l is None:
                    raise HypothesisError("--case general requires --k and --l")
                reports.append(margin_general(CaseSpec(args.k, args.l, args.N), u, qspec, tol))
    extra = {"case": args.case, "N": n_out, "tol": tol}
    return _finish_reports("verify", extra, reports, args.suite, margin_csv_rows, _margin_line)


def _cmd_identity(args):
    qspec = _qspec(args)
    pointwise = args.which in ("ph1", "trans1")
    tol = args.tol if args.tol is not None else (1e-10 if pointwise else 1e-8)
    suite = load_suite(args.suite)
    reports = []
    for u in suite:
        if args.which == "ph1":
            reports.append(check_ph1(u, args.N, tol=tol))
        elif args.which == "trans1":
            reports.append(check_trans1(u, args.N, tol=tol))
        elif args.which == "estimate1":
            reports.append(check_estimate1(u, args.n, args.N, qspec, tol))
        else:
            reports.append(check_estimate2(u, args.n, args.N, qspec, tol))
    extra = {"which": args.which, "N": args.N, "n": None if pointwise else args.n, "tol": tol}
    return _finish_reports("identity", extra, reports, args.suite, identity_csv_rows, _identity_line)


def _cmd_sharpness(args):
    params = [float(x) for x in args.params.split(",")] if args.params else None
    rows_data = sharpness_probe(args.case, args.N, params, _qspec(args))
    payload = {"command": "sharpness", "case": args.case, "N": args.N, "rows": rows_data}
    case_id = f"sharpness_{args.case}"
    rows = [
        (case_id, str(args.N), f"param_{row['param']}", "quotient", repr(row["quotient"]))
        for row in rows_data
    ]
    lines = [f"{'param':>12}  {'quotient':>18}"]
    lines.extend(f"{row['param']:>12.6g}  {row['quotient']:>18.12g}" for row in rows_data)
    return payload, rows, "\n".join(lines), 0


def _cmd_halfspace(args):
    pspec = _pspec(args)
    members = halfspace_suite(args.suite)
    which = args.which
    if which in ("rellich1", "rellich2", "hardy_mazya"):
        tol = args.tol if args.tol is not None else 1e-7
        if which == "hardy_mazya":
            reports = [margin_hardy_mazya(v, args.N, pspec, tol) for v in members]
        else:
            reports = [margin_halfspace(which, v, args.N, pspec, tol) for v in members]
        extra = {"which": which, "N": args.N, "tol": tol}
        return _finish_reports("halfspace", extra, reports, args.suite, margin_csv_rows, _margin_line)
    tol = args.tol if args.tol is not None else 1e-8
    alphas = args.alpha if args.alpha else [(args.N - 2) / 2.0, (args.N - 4) / 2.0]
    reports = []
    for v in members:
        for alpha in alphas:
            if which == "pf1":
                reports.append(check_pf1(v, alpha, args.N, pspec, tol))
            else:
                reports.append(check_pf2(v, alpha, args.N, tol))
    extra = {"which": which, "N": args.N, "alphas": list(alphas), "tol": tol}
    return _finish_reports("halfspace", extra, reports, args.suite, identity_csv_rows, _identity_line)


def _default_name(args) -> str:
    bits = [args.command]
    if args.command == "constants":
        bits.append(f"k{args.k}_l{args.l}")
    for attr in ("case", "which"):
        value = getattr(args, attr, None)
        if value:
            bits.append(value)
    n = getattr(args, "N", None)
    if n is not None:
        bits.append(f"N{n}")
    ext = {"text": "txt", "json": "json", "csv": "csv"}[args.format]
    return "_".join(bits) + "." + ext


def _emit(args, payload, rows, text) -> None:
    if args.format == "json":
        content = dumps_json(payload)
    elif args.format == "csv":
        content = dumps_csv(rows, _CSV_HEADER)
    else:
        content = text if text.endswith("\n") else text + "\n"
    path = args.out
    if path is None:
        outdir = os.environ.get(_OUTDIR_ENV)
        if outdir:
            path = Path(outdir) / _default_name(args)
    if path is None:
        sys.stdout.write(content)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content)


_HANDLERS = {
    "constants": _cmd_constants,
    "verify": _cmd_verify,
    "identity": _cmd_identity,
    "sharpness": _cmd_sharpness,
    "halfspace": _cmd_halfspace,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload, rows, text, code = _HANDLERS[args.command](args)
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    try:
        _emit(args, payload, rows, text)
    except OSError as exc:
        print(f"output failure: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
