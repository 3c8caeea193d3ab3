"""Command-line front end: `lagiso verify | sample | integrate`.

Exit codes: 0 pass, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .errors import DegenerateCurve, InvalidParameter, LagisoError
from .families import FAMILIES, build_family
from .frameflow import compare_with_closed_form
from .report import dumps, write_csv
from .verify import sample_header, sample_rows, verify_family

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _grid(text: str) -> tuple[int, int]:
    try:
        nu, nv = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 21x21, got {text!r}")
    if nu < 1 or nv < 1:
        raise argparse.ArgumentTypeError("grid sizes must be positive")
    return nu, nv


def _positive(text: str) -> float:
    x = float(text)
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


def read_config(path: str) -> dict[str, str]:
    """key = value lines (# comments, optional quotes); keys mirror the long flags."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value.strip("'\"")
    return out


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES, required=False)
    p.add_argument("--r", type=float, default=0.0, help="Type 2 parameter r >= 0")
    p.add_argument("--alpha", default="sin", help="Type 1 profile: sin, cos, exp, k*sin, poly:c0,c1,...")
    p.add_argument("--beta", default="cos", help="Type 1 profile, same vocabulary as --alpha")
    p.add_argument("--grid", type=_grid, default=(21, 21), help="NUxNV sample grid")
    p.add_argument("--tol", type=_positive, default=None, help="isotropy tolerance (default 1e-6 or $LAGISO_TOL)")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="lagiso", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"lagiso {__version__}")
    parser.add_argument("--config", help="key = value file mirroring the flags")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the full check suite on a family")
    _add_family_args(verify)
    verify.add_argument("--json", help="write the JSON report here (default: stdout)")

    sample = sub.add_parser("sample", help="export grid samples as CSV")
    _add_family_args(sample)
    sample.add_argument("--csv", help="write CSV here (default: stdout)")

    integ = sub.add_parser("integrate", help="compare RK4 with the closed-form frame functions")
    integ.add_argument("--c", type=float, choices=(0.0, 1.0), default=1.0)
    integ.add_argument("--r", type=float, default=1.0)
    integ.add_argument("--u0", type=float, default=0.0)
    integ.add_argument("--u1", type=float, default=2 * math.pi)
    integ.add_argument("--step", type=_positive, default=1e-3)
    integ.add_argument("--tol", type=_positive, default=1e-8, help="max deviation allowed")
    integ.add_argument("--drift-tol", type=_positive, default=1e-9)
    integ.add_argument("--json", help="write the JSON report here (default: stdout)")
    return parser, {"verify": verify, "sample": sample, "integrate": integ}


def _apply_config(argv: Sequence[str], subparsers: dict[str, argparse.ArgumentParser]) -> None:
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    command = next((a for a in rest if a in subparsers), None)
    if command is None:
        return
    target = subparsers[command]
    valid = {a.dest for a in target._actions}
    unknown = sorted(set(values) - valid)
    if unknown:
        target.error(f"unknown config keys: {', '.join(unknown)}")
    # string defaults go through each action's type conversion
    target.set_defaults(**values)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _family(args, parser: argparse.ArgumentParser):
    if args.family is None:
        parser.error("--family is required")
    if args.r < 0 or not math.isfinite(args.r):
        parser.error(f"--r must be >= 0, got {args.r}")
    return build_family(args.family, r=args.r, alpha=args.alpha, beta=args.beta)


def cmd_verify(args, parser) -> int:
    imm = _family(args, parser)
    report = verify_family(imm, *args.grid, tol=args.tol)
    _emit(report.to_json(), args.json)
    log = sys.stderr if not args.json else sys.stdout
    for c in report.checks:
        log.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.max_residual:.3e} {c.relation} {c.tol:g}\n")
    if not report.overall_pass:
        names = ", ".join(c.name for c in report.failing())
        sys.stderr.write(f"verification failed: {names}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_sample(args, parser) -> int:
    imm = _family(args, parser)
    header = sample_header(imm.ambient.q)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            write_csv(fh, header, sample_rows(imm, *args.grid, tol=args.tol))
    else:
        write_csv(sys.stdout, header, sample_rows(imm, *args.grid, tol=args.tol))
    return EXIT_OK


def cmd_integrate(args, parser) -> int:
    if args.r < 0 or not math.isfinite(args.r):
        parser.error(f"--r must be >= 0, got {args.r}")
    cmp = compare_with_closed_form(args.c, args.r, (args.u0, args.u1), args.step)
    start = [-args.c + args.r * math.sin(args.u0), args.r * math.cos(args.u0)]
    constant = args.r == 0
    ok = cmp.max_dev <= args.tol and cmp.r_drift <= args.drift_tol
    out = {
        "artifact_version": __version__,
        "c": args.c,
        "r": args.r,
        "span": list(cmp.span),
        "step": args.step,
        "initial_state": {"lambda": start[0], "beta": start[1]},
        "final_state": {"lambda": float(cmp.endpoint[0]), "beta": float(cmp.endpoint[1])},
        "max_dev": cmp.max_dev,
        "conserved_r_drift": cmp.r_drift,
        "constant_trajectory": constant,
        "tol": args.tol,
        "drift_tol": args.drift_tol,
        "pass": ok,
    }
    _emit(dumps(out), args.json)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "sample": cmd_sample, "integrate": cmd_integrate}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    try:
        _apply_config(argv, subparsers)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    args = parser.parse_args(argv)
    sub = subparsers[args.command]
    try:
        return COMMANDS[args.command](args, sub)
    except (InvalidParameter, DegenerateCurve) as exc:
        sys.stderr.write(f"lagiso: {exc}\n")
        return EXIT_USAGE
    except LagisoError as exc:
        # numerical failure: self-check, degenerate geometry, blow-up
        sys.stderr.write(f"lagiso: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
