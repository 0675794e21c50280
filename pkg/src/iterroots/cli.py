"""Command-line front end.

Subcommands: ``root`` (series root), ``rroot`` (Riordan matrix root),
``verify`` (recheck a root, including reports piped from root/rroot),
``feasibility`` (integer square-root ledger), ``enumerate`` (exhaustive
mod-2 square classification), ``emit`` (b-file of a computed root).

Exit codes: 0 success/unique, 1 usage or parse error, 2 no solution or
verification mismatch, 3 branch (non-unique) results.  Reports carry no
timestamps, so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .errors import IterrootsError
from .rings import QQ, ZZ, RingCtx, Zmod, parse_ring
from .series import PRESET_NAMES, TruncSeries, preset
from .riordan_roots import riordan_power, riordan_root
from .subst_roots import (
    DEFAULT_BRANCH_CAP,
    MOD2_ENUMERATION_MAX_ORDER,
    iter_root,
    mod2_square_root_classes,
    zroot_feasibility,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_SOLUTION = 2
EXIT_BRANCHES = 3

BRANCH_CAP_ENV = "ITERROOTS_BRANCH_CAP"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # spec'd exit-code contract: usage problems exit 1, not argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="iterroots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, ring_default="Q"):
        p.add_argument("--ring", default=ring_default,
                       help='coefficient ring: "Z", "Q" or "Zmod:<m>"')
        p.add_argument("--order", type=int, default=None,
                       help="truncation order (default: inferred from --coeffs)")
        p.add_argument("--format", default="text",
                       choices=("text", "json", "csv", "bfile"),
                       help="output format")
        p.add_argument("--output", default=None, help="write the report to this file")

    p_root = sub.add_parser("root", help="iterative root of a series")
    add_common(p_root)
    p_root.add_argument("--n", type=int, required=True, help="root order (>= 2)")
    p_root.add_argument("--coeffs", help="comma-separated coefficients, constant first")
    p_root.add_argument("--preset", choices=PRESET_NAMES,
                        help="use a stock series instead of --coeffs (ring Q)")
    p_root.add_argument("--branch-cap", type=int, default=None,
                        help=f"max enumerated branches (default {DEFAULT_BRANCH_CAP}; "
                             f"env {BRANCH_CAP_ENV})")
    p_root.add_argument("--offset", type=int, default=0,
                        help="first index for --format bfile")

    p_rroot = sub.add_parser("rroot", help="root of a Riordan matrix pair")
    add_common(p_rroot)
    p_rroot.add_argument("--n", type=int, required=True)
    p_rroot.add_argument("--f", required=True, help="coefficients of f (f0 = 1)")
    p_rroot.add_argument("--g", required=True, help="coefficients of g (0, 1, ...)")
    p_rroot.add_argument("--branch-cap", type=int, default=None)

    p_verify = sub.add_parser("verify", help="recheck a computed root")
    add_common(p_verify)
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--g", help="target series coefficients")
    p_verify.add_argument("--omega", help="candidate root coefficients")
    p_verify.add_argument("--f", help="target f (Riordan mode)")
    p_verify.add_argument("--alpha", help="candidate alpha (Riordan mode)")
    p_verify.add_argument("--json", dest="json_report", metavar="FILE",
                          help='verify a JSON report from root/rroot ("-" = stdin)')

    p_feas = sub.add_parser("feasibility",
                            help="integer square-root feasibility ledger")
    add_common(p_feas, ring_default="Z")
    p_feas.add_argument("--coeffs", required=True)

    p_enum = sub.add_parser("enumerate",
                            help="exhaustive mod-2 square classification")
    add_common(p_enum, ring_default="Zmod:2")
    p_enum.add_argument("--bound", type=int, default=MOD2_ENUMERATION_MAX_ORDER,
                        help="largest allowed order")

    p_emit = sub.add_parser("emit", help="emit a computed root as a b-file")
    add_common(p_emit)
    p_emit.add_argument("--n", type=int, required=True)
    p_emit.add_argument("--coeffs")
    p_emit.add_argument("--preset", choices=PRESET_NAMES)
    p_emit.add_argument("--offset", type=int, default=0,
                        help="index of the first emitted term")
    p_emit.add_argument("--branch-cap", type=int, default=None)

    return parser


# ---------------------------------------------------------------------------
# input plumbing
# ---------------------------------------------------------------------------


def _parse_coeffs(ctx: RingCtx, text: str, order: int | None) -> TruncSeries:
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    if not items:
        raise UsageError("empty --coeffs list")
    try:
        return TruncSeries(ctx, items, order=order)
    except (ValueError, IterrootsError) as exc:
        raise UsageError(f"bad coefficient list: {exc}") from exc


def _input_series(args, ctx: RingCtx) -> TruncSeries:
    if getattr(args, "preset", None):
        if args.coeffs:
            raise UsageError("give either --coeffs or --preset, not both")
        if ctx != QQ:
            raise UsageError("--preset series live over the rationals (--ring Q)")
        if args.order is None:
            raise UsageError("--preset needs --order")
        return preset(args.preset, args.order)
    if not getattr(args, "coeffs", None):
        raise UsageError("missing required field: --coeffs (or --preset)")
    return _parse_coeffs(ctx, args.coeffs, args.order)


def _branch_cap(args) -> int:
    if getattr(args, "branch_cap", None) is not None:
        return args.branch_cap
    env = os.environ.get(BRANCH_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"bad {BRANCH_CAP_ENV} value {env!r}") from exc
    return DEFAULT_BRANCH_CAP


def _emit_text(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _coeff_strings(series: TruncSeries) -> list[str]:
    return [series.ctx.format(v) for v in series.raw()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_root(args) -> int:
    ctx = parse_ring(args.ring)
    g = _input_series(args, ctx)
    result = iter_root(g, args.n, branch_cap=_branch_cap(args))

    report = {
        "command": "root",
        "ring": ctx.name,
        "order": g.order,
        "n": args.n,
        "g": _coeff_strings(g),
        "status": result.status,
    }
    if result.status == "unique":
        verified = g == result.root.iterate(args.n)
        report["omega"] = _coeff_strings(result.root)
        report["verified"] = verified
        code = EXIT_OK
    elif result.status == "no_solution":
        report["at_index"] = result.at_index
        report["rhs"] = str(result.rhs)
        code = EXIT_NO_SOLUTION
    else:
        report["complete"] = bool(result.complete)
        report["branches"] = [_coeff_strings(w) for w in result.branches]
        code = EXIT_BRANCHES

    if args.format == "json":
        _emit_text(args, json.dumps(report, indent=2) + "\n")
    elif args.format == "bfile":
        if result.status != "unique":
            raise UsageError("bfile output needs a unique root")
        _emit_text(args, _bfile(result.root, args.offset))
    else:
        lines = [f"ring {ctx.name}  order {g.order}  n {args.n}"]
        if result.status == "unique":
            lines.append("status unique")
            lines.append("omega " + ", ".join(report["omega"]))
            lines.append(
                f"verify iterate(omega, {args.n}) == g: "
                + ("OK" if report["verified"] else "FAIL")
            )
        elif result.status == "no_solution":
            lines.append("status no-solution")
            lines.append(f"obstructed at index {result.at_index}, rhs {result.rhs}")
        else:
            lines.append(f"status branches ({len(result.branches)} roots, "
                         f"complete={str(bool(result.complete)).lower()})")
            for w in result.branches:
                lines.append("omega " + ", ".join(_coeff_strings(w)))
        _emit_text(args, "\n".join(lines) + "\n")
    return code


def _cmd_rroot(args) -> int:
    ctx = parse_ring(args.ring)
    f = _parse_coeffs(ctx, args.f, args.order)
    g = _parse_coeffs(ctx, args.g, args.order)
    if f.order != g.order:
        raise UsageError("--f and --g must have the same length/order")
    result = riordan_root(f, g, args.n, branch_cap=_branch_cap(args))

    report = {
        "command": "rroot",
        "ring": ctx.name,
        "order": f.order,
        "n": args.n,
        "f": _coeff_strings(f),
        "g": _coeff_strings(g),
        "status": result.status,
    }
    if result.status == "unique":
        report["alpha"] = _coeff_strings(result.alpha)
        report["omega"] = _coeff_strings(result.omega)
        code = EXIT_OK
    elif result.status == "no_solution":
        report["stage"] = result.stage
        report["at_index"] = result.at_index
        report["rhs"] = str(result.rhs)
        code = EXIT_NO_SOLUTION
    else:
        report["complete"] = bool(result.complete)
        report["branches"] = [
            {"alpha": _coeff_strings(a), "omega": _coeff_strings(w)}
            for a, w in result.branches
        ]
        code = EXIT_BRANCHES

    if args.format == "json":
        _emit_text(args, json.dumps(report, indent=2) + "\n")
    else:
        lines = [f"ring {ctx.name}  order {f.order}  n {args.n}"]
        if result.status == "unique":
            lines.append("status unique")
            lines.append("alpha " + ", ".join(report["alpha"]))
            lines.append("omega " + ", ".join(report["omega"]))
        elif result.status == "no_solution":
            lines.append("status no-solution")
            lines.append(
                f"obstructed in stage {result.stage} at index {result.at_index}, "
                f"rhs {result.rhs}"
            )
        else:
            lines.append(f"status branches ({len(result.branches)} pairs, "
                         f"complete={str(bool(result.complete)).lower()})")
            for a, w in result.branches:
                lines.append("alpha " + ", ".join(_coeff_strings(a))
                             + " | omega " + ", ".join(_coeff_strings(w)))
        _emit_text(args, "\n".join(lines) + "\n")
    return code


def _verify_series(ctx, n, g, omega) -> tuple[bool, str]:
    got = omega.iterate(n)
    for k in range(g.order + 1):
        if got[k] != g[k]:
            return False, (f"mismatch at index {k}: "
                           f"iterate gives {got[k]}, target has {g[k]}")
    return True, f"iterate(omega, {n}) == g: OK"


def _verify_pair_mode(ctx, n, f, g, alpha, omega) -> tuple[bool, str]:
    got_f, got_g = riordan_power(alpha, omega, n)
    for k in range(g.order + 1):
        if got_g[k] != g[k]:
            return False, f"mismatch in g at index {k}"
        if got_f[k] != f[k]:
            return False, f"mismatch in f at index {k}"
    return True, f"power(alpha, omega, {n}) == (f, g): OK"


def _cmd_verify(args) -> int:
    if args.json_report:
        data = (json.load(sys.stdin) if args.json_report == "-" else
                json.load(open(args.json_report)))
        ctx = parse_ring(data["ring"])
        n = data["n"]
        order = data["order"]
        g = TruncSeries(ctx, data["g"], order=order)
        status = data.get("status", "unique")
        if status == "no_solution":
            rerun = iter_root(g, n)
            ok = (rerun.status == "no_solution"
                  and rerun.at_index == data.get("at_index"))
            msg = ("no-solution obstruction reproduced: OK" if ok
                   else "no-solution report does not reproduce")
            print(msg)
            return EXIT_OK if ok else EXIT_NO_SOLUTION
        if status == "branches":
            for coeffs in data.get("branches", []):
                w = TruncSeries(ctx, coeffs, order=order)
                ok, msg = _verify_series(ctx, n, g, w)
                if not ok:
                    print(msg)
                    return EXIT_NO_SOLUTION
            print(f"all {len(data.get('branches', []))} branches verified: OK")
            return EXIT_OK
        if "alpha" in data:
            f = TruncSeries(ctx, data["f"], order=order)
            alpha = TruncSeries(ctx, data["alpha"], order=order)
            omega = TruncSeries(ctx, data["omega"], order=order)
            ok, msg = _verify_pair_mode(ctx, n, f, g, alpha, omega)
        else:
            omega = TruncSeries(ctx, data["omega"], order=order)
            ok, msg = _verify_series(ctx, n, g, omega)
        print(msg)
        return EXIT_OK if ok else EXIT_NO_SOLUTION

    if args.n is None:
        raise UsageError("missing required field: --n")
    if not args.g or not args.omega:
        raise UsageError("missing required field: --g and --omega")
    ctx = parse_ring(args.ring)
    g = _parse_coeffs(ctx, args.g, args.order)
    omega = _parse_coeffs(ctx, args.omega, args.order)
    if (args.f is None) != (args.alpha is None):
        raise UsageError("Riordan mode needs both --f and --alpha")
    if args.f is not None:
        f = _parse_coeffs(ctx, args.f, args.order)
        alpha = _parse_coeffs(ctx, args.alpha, args.order)
        ok, msg = _verify_pair_mode(ctx, args.n, f, g, alpha, omega)
    else:
        ok, msg = _verify_series(ctx, args.n, g, omega)
    print(msg)
    return EXIT_OK if ok else EXIT_NO_SOLUTION


def _cmd_feasibility(args) -> int:
    ctx = parse_ring(args.ring)
    if ctx != ZZ:
        raise UsageError("feasibility analysis needs --ring Z")
    g = _parse_coeffs(ctx, args.coeffs, args.order)
    ledger = zroot_feasibility(g)

    if args.format == "json":
        report = {
            "command": "feasibility",
            "ring": "Z",
            "order": g.order,
            "g": _coeff_strings(g),
            "steps": [
                {
                    "index": s.index,
                    "rhs": str(s.rhs),
                    "solvable": s.solvable,
                    "chosen": None if s.chosen is None else str(s.chosen),
                }
                for s in ledger.steps
            ],
            "overall": ledger.overall,
            "all_divisible_by_four": ledger.all_divisible_by_four,
        }
        _emit_text(args, json.dumps(report, indent=2) + "\n")
    else:
        lines = ["k  rhs  solvable  chosen"]
        for s in ledger.steps:
            chosen = "-" if s.chosen is None else str(s.chosen)
            lines.append(f"{s.index}  {s.rhs}  {'yes' if s.solvable else 'no'}  {chosen}")
        lines.append(f"overall: {'feasible' if ledger.overall else 'infeasible'}")
        lines.append("all coefficients divisible by 4: "
                     + ("yes" if ledger.all_divisible_by_four else "no"))
        _emit_text(args, "\n".join(lines) + "\n")
    return EXIT_OK if ledger.overall else EXIT_NO_SOLUTION


def _bits(tup) -> str:
    return "".join(str(b) for b in tup)


def _cmd_enumerate(args) -> int:
    ctx = parse_ring(args.ring)
    if ctx != Zmod(2):
        raise UsageError("enumeration runs over --ring Zmod:2")
    if args.order is None:
        raise UsageError("missing required field: --order")
    table = mod2_square_root_classes(args.order, max_order=args.bound)

    if args.format == "json":
        report = {
            "command": "enumerate",
            "ring": "Zmod:2",
            "order": args.order,
            "classes": [
                {"g": _bits(key), "count": len(roots),
                 "roots": [_bits(w) for w in roots]}
                for key, roots in table.items()
            ],
        }
        _emit_text(args, json.dumps(report, indent=2) + "\n")
    elif args.format == "text":
        lines = [f"reachable squares over Zmod:2 at order {args.order} "
                 f"(coefficients x^2..x^{args.order})"]
        for key, roots in table.items():
            lines.append(f"g {_bits(key)}: {len(roots)} roots: "
                         + " ".join(_bits(w) for w in roots))
        _emit_text(args, "\n".join(lines) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["g", "count", "roots"])
        for key, roots in table.items():
            writer.writerow([_bits(key), len(roots),
                             "|".join(_bits(w) for w in roots)])
        _emit_text(args, buf.getvalue())
    return EXIT_OK


def _bfile(series: TruncSeries, offset: int) -> str:
    fmt = series.ctx.format
    lines = [f"{k} {fmt(series.raw()[k])}" for k in range(offset, series.order + 1)]
    return "\n".join(lines) + "\n"


def _cmd_emit(args) -> int:
    ctx = parse_ring(args.ring)
    g = _input_series(args, ctx)
    result = iter_root(g, args.n, branch_cap=_branch_cap(args))
    if result.status != "unique":
        print(f"no unique root to emit (status {result.status})", file=sys.stderr)
        return EXIT_NO_SOLUTION if result.status == "no_solution" else EXIT_BRANCHES
    if args.offset < 0 or args.offset > g.order:
        raise UsageError("--offset out of range")
    _emit_text(args, _bfile(result.root, args.offset))
    return EXIT_OK


_COMMANDS = {
    "root": _cmd_root,
    "rroot": _cmd_rroot,
    "verify": _cmd_verify,
    "feasibility": _cmd_feasibility,
    "enumerate": _cmd_enumerate,
    "emit": _cmd_emit,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"iterroots {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IterrootsError, ValueError) as exc:
        print(f"iterroots {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
