"""Command line interface.

Exit codes: 0 success, 1 failed check, 2 unreadable or malformed input,
3 unsupported dimension.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bench, io
from .complex import build_complex
from .geometry import DimensionError
from .highdim import two_skeleton
from .miniball import miniball
from .render import render_svg
from .rhomap import DEFAULT_TOL
from .solver import cech_scale, cech_scale_naive

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3

THREADS_ENV = "CECH_SCALE_THREADS"


class UsageError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _threads(args) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {env!r}", EXIT_PARSE) from None
    elif args.threads is not None:
        n = args.threads
    else:
        n = os.cpu_count() or 1
    return max(1, n)


def _load(path, dims=(2,)):
    try:
        system = io.read_disks(path)
    except OSError as exc:
        raise UsageError(str(exc), EXIT_PARSE) from None
    except io.ParseError as exc:
        raise UsageError(f"{path}: {exc}", EXIT_PARSE) from None
    if dims == "any2+":
        if system.dim < 2:
            raise UsageError(f"{path}: dimension {system.dim} unsupported, need d >= 2", EXIT_DIMENSION)
    elif system.dim not in dims:
        raise UsageError(f"{path}: dimension {system.dim} unsupported, need d = 2", EXIT_DIMENSION)
    return system


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def cmd_cech_scale(args) -> int:
    system = _load(args.input)
    if args.naive:
        res = cech_scale_naive(system, tol=args.tolerance)
    else:
        res = cech_scale(system, tol=args.tolerance, workers=_threads(args))
    print(f"rips_scale={_fmt(res.rips_scale)}")
    print(f"cech_scale={_fmt(res.cech_scale)}")
    print("witness=" + ",".join(_fmt(x) for x in res.witness))
    print(f"bisection_calls={res.bisection_calls}")
    print(f"status={res.status.value}")
    return EXIT_OK


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_filtration(args) -> int:
    system = _load(args.input)
    _emit(io.format_filtration(build_complex(system, args.lam, args.max_dim)), args.out)
    return EXIT_OK


def cmd_skeleton2(args) -> int:
    system = _load(args.input, dims="any2+")
    _emit(io.format_filtration(two_skeleton(system, args.lam)), args.out)
    return EXIT_OK


def cmd_miniball(args) -> int:
    try:
        points = io.read_points(args.input)
    except OSError as exc:
        raise UsageError(str(exc), EXIT_PARSE) from None
    except io.ParseError as exc:
        raise UsageError(f"{args.input}: {exc}", EXIT_PARSE) from None
    if points.shape[1] != 2:
        raise UsageError(f"{args.input}: dimension {points.shape[1]} unsupported, need d = 2",
                         EXIT_DIMENSION)
    ball = miniball(points, workers=_threads(args))
    print("center=" + ",".join(_fmt(x) for x in ball.center))
    print(f"radius={_fmt(ball.radius)}")
    return EXIT_OK


def cmd_render(args) -> int:
    system = _load(args.input)
    _emit(render_svg(system, args.scale), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench.run_bench(args.max_disks, args.repeats, args.dims, args.seed, args.step,
                           workers=_threads(args))
    _emit(bench.format_csv(rows), args.out)
    return EXIT_OK


def cmd_check_filtration(args) -> int:
    try:
        steps = io.parse_filtration(Path(args.input).read_text())
    except OSError as exc:
        raise UsageError(str(exc), EXIT_PARSE) from None
    except io.ParseError as exc:
        raise UsageError(f"{args.input}: {exc}", EXIT_PARSE) from None
    problems = io.check_filtration(steps)
    for p in problems:
        print(p)
    if problems:
        return EXIT_CHECK_FAILED
    print(f"ok: {len(steps)} simplices")
    return EXIT_OK


def _nonneg(text):
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative number, got {text}")
    return value


def _dims(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cech-scale", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: all cores; {THREADS_ENV} overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cech-scale", help="Cech scale and witness of a planar disk file")
    p.add_argument("input")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    p.add_argument("--naive", action="store_true", help="bisect rho of the whole system")
    p.set_defaults(func=cmd_cech_scale)

    p = sub.add_parser("filtration", help="weighted Cech complex of a planar disk file")
    p.add_argument("input")
    p.add_argument("--lambda", dest="lam", type=_nonneg, required=True)
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("skeleton2", help="weighted 2-skeleton of a disk file in R^d")
    p.add_argument("input")
    p.add_argument("--lambda", dest="lam", type=_nonneg, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_skeleton2)

    p = sub.add_parser("miniball", help="smallest enclosing circle of a point file")
    p.add_argument("input")
    p.set_defaults(func=cmd_miniball)

    p = sub.add_parser("render", help="SVG of a planar disk file at a scale")
    p.add_argument("input")
    p.add_argument("--scale", type=_nonneg, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="timing CSV: naive vs triplets, and dimensions")
    p.add_argument("--max-disks", type=int, default=500)
    p.add_argument("--step", type=int, default=10)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--dims", type=_dims, default=[])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check-filtration", help="verify a filtration file is face-closed and sorted")
    p.add_argument("input")
    p.set_defaults(func=cmd_check_filtration)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_dim", 1) < 1:
        parser.error("--max-dim must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION


if __name__ == "__main__":
    sys.exit(main())
