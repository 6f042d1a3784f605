"""Command-line interface; every subcommand writes CSV with a one-line header.

Exit codes: 0 success, 2 usage error, 3 numeric-domain error, 4 convergence failure.
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys
from pathlib import Path

from . import bench
from .api import METHODS, EvaluationRequest, ai, bi
from .coefficients import build_ab_table
from .errors import ConvergenceError, DomainError, ResourceError
from .geometry import sample_paths

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONVERGENCE = 0, 2, 3, 4


def _emit(args, header, rows, path: Path | None = None) -> None:
    path = path or (Path(args.out) if args.out else None)
    if path is None:
        bench.write_csv(header, rows, sys.stdout)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            bench.write_csv(header, rows, fh)


def _cmd_value(args, func) -> None:
    res = func(EvaluationRequest(complex(args.re, args.im), args.method, args.terms))
    _emit(args, ["value_re", "value_im", "method", "terms_used", "error_bound"],
          [[res.value.real, res.value.imag, res.method_used, res.terms_used, res.error_bound]])


def _cmd_grid(args) -> None:
    recs = bench.accuracy_grid((args.xmin, args.xmax), (args.ymin, args.ymax), args.step, args.method,
                               args.terms, workers=args.workers)
    _emit(args, bench.GRID_HEADER, bench.grid_rows(recs))


def _cmd_profile(args) -> None:
    zs = []
    for pair in args.z.split(";"):
        if pair.strip():
            r, phi = (float(v) for v in pair.split(","))
            zs.append(cmath.rect(r, phi))
    ns = [int(v) for v in args.terms.split(",") if v.strip()]
    rows = bench.convergence_profile(zs, ns, args.method)
    _emit(args, bench.PROFILE_HEADER, [[r["r"], r["phi"], r["N"], r["accuracy"]] for r in rows])


def _path_rows(samples):
    return [[p.segment, p.param, p.alpha.real, p.alpha.imag, p.f_real, p.f_imag] for p in samples]


def _cmd_paths(args) -> None:
    header = ["segment", "param", "re_alpha", "im_alpha", "f_real", "f_imag"]
    phi = args.phi
    if abs(phi) <= 2 * math.pi / 3 + 1e-12:
        _emit(args, header, _path_rows(sample_paths(cmath.exp(1j * phi), args.samples, args.smax)))
        return
    # two contours: sample the two rotated single-contour problems
    for k, shift in enumerate((2 * math.pi / 3, -2 * math.pi / 3), start=1):
        rotated = math.remainder(phi + shift, 2 * math.pi)
        rows = _path_rows(sample_paths(cmath.exp(1j * rotated), args.samples, args.smax))
        path = None
        if args.out:
            out = Path(args.out)
            path = out.with_name(f"{out.stem}_{k}{out.suffix}")
        _emit(args, header, rows, path)


def _cmd_coeffs(args) -> None:
    table = build_ab_table(args.mmax)
    rows = []
    for m in range(args.mmax + 1):
        exact = m <= table.exact_limit
        rows.append([m, str(table.a_exact[m]) if exact else "", float(table.a[m]),
                     str(table.b_exact[m]) if exact else "", float(table.b[m])])
    _emit(args, ["m", "a_exact", "a_float", "b_exact", "b_float"], rows)


def _cmd_bound_map(args) -> None:
    rows = bench.error_bound_map((args.xmin, args.xmax), (args.ymin, args.ymax), args.step, args.terms,
                                 workers=args.workers)
    _emit(args, bench.BOUND_HEADER, [[r["x"], r["y"], r["bound"], r["actual_error"], r["has_bound"]] for r in rows])


def _add_box(p: argparse.ArgumentParser) -> None:
    for name, default in (("xmin", -10.0), ("xmax", 10.0), ("ymin", -10.0), ("ymax", 10.0), ("step", 0.25)):
        p.add_argument(f"--{name}", type=float, default=default)
    p.add_argument("--workers", type=int, default=1, help="worker processes (output does not depend on it)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="airyseries", description="Airy functions by convergent and classical series.")
    parser.add_argument("--out", help="output CSV path (default: standard output)")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func in (("ai", ai), ("bi", bi)):
        p = sub.add_parser(name, help=f"evaluate {name.capitalize()}(z)")
        p.add_argument("--re", type=float, required=True)
        p.add_argument("--im", type=float, default=0.0)
        p.add_argument("--method", choices=METHODS, default="auto")
        p.add_argument("--terms", type=int, default=500)
        p.set_defaults(handler=lambda a, f=func: _cmd_value(a, f))

    p = sub.add_parser("grid", help="accuracy against the reference over a grid")
    p.add_argument("--method", choices=METHODS, default="convergent")
    p.add_argument("--terms", type=int, default=500)
    _add_box(p)
    p.set_defaults(handler=_cmd_grid)

    p = sub.add_parser("profile", help="accuracy as a function of the truncation index")
    p.add_argument("--z", required=True, help='points as "r,phi;r,phi;..."')
    p.add_argument("--terms", default="100,200,300,400,500")
    p.add_argument("--method", choices=METHODS, default="convergent")
    p.set_defaults(handler=_cmd_profile)

    p = sub.add_parser("paths", help="steepest-descent contour samples")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--smax", type=float, default=10.0)
    p.set_defaults(handler=_cmd_paths)

    p = sub.add_parser("coeffs", help="outer-segment coefficient table")
    p.add_argument("--mmax", type=int, default=20)
    p.set_defaults(handler=_cmd_coeffs)

    p = sub.add_parser("bound-map", help="oscillation error bound next to the actual error")
    p.add_argument("--terms", type=int, default=500)
    _add_box(p)
    p.set_defaults(handler=_cmd_bound_map)

    for p in sub.choices.values():
        p.add_argument("--out", default=argparse.SUPPRESS, help="output CSV path")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "out"):
        args.out = None
    try:
        args.handler(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
