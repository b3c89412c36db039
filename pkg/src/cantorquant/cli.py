"""Command-line front end.

Subcommands: optimal, error, distortion, verify, count, plot.  All
numeric output is exact rational text; decimal renderings are a
convenience, carry ten significant digits, and are marked as approx.
Every command is deterministic given its flags.

Exit codes are a stable scripting contract: 0 success, 1 usage error,
2 verification failure, 3 I/O or input-file error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .engine import (
    DEFAULT_MAX_DEPTH,
    RunStatus,
    exact_distortion,
    lloyd_step,
    multistart_search,
)
from .measure import format_rational, parse_rational
from .optimal import (
    Codebook,
    count_variants,
    optimal_codebook,
    quantization_error,
    spread_indices,
)
from .plot import render_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3

ENUM_ALL_LIMIT = 100_000


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code pinned to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Validated per-command settings."""

    command: str
    n: int = 0
    variant_index: int | None = None
    all_variants: bool = False
    codebook_path: str | None = None
    tolerance: str = "1e-12"
    depth: int = 0
    seeds: int = 200
    rng_seed: int = 1
    max_variants: int = 100
    format: str = "json"
    output_path: str | None = None


def approx_str(value: Fraction, digits: int = 10) -> str:
    """Decimal rendering with the given number of significant digits."""
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits + 15
        d = Decimal(value.numerator) / Decimal(value.denominator)
        q = d.quantize(Decimal(1).scaleb(d.adjusted() - (digits - 1)))
    return str(q)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text}")
    return value


def _at_least_two(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"must be at least 2, got {text}")
    return value


def _parse_tolerance(text: str) -> Fraction:
    tol = parse_rational(text)
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {text}")
    return tol


def _emit(text: str, path: str | None) -> int:
    if path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(path, "w", newline="\n") as handle:
            handle.write(text)
    except OSError as err:
        print(f"cannot write {path}: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _count_for(n: int) -> int:
    return 1 if n == 1 else count_variants(n)


def _points_csv(book: Codebook, variant: int) -> list[str]:
    return [
        f"{variant},{format_rational(p.x)},{format_rational(p.y)}"
        for p in book
    ]


def cmd_optimal(cfg: RunConfig) -> int:
    n = cfg.n
    total = _count_for(n)
    error = quantization_error(n)
    if cfg.all_variants:
        if total > ENUM_ALL_LIMIT:
            print(
                f"refusing to enumerate {total} variants for n={n}; "
                f"use --variant with an index below {total}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        indices = range(total)
    else:
        index = cfg.variant_index if cfg.variant_index is not None else 0
        if not 0 <= index < total:
            print(
                f"variant {index} out of range: n={n} has {total} "
                f"variant{'s' if total != 1 else ''} (0..{total - 1})",
                file=sys.stderr,
            )
            return EXIT_USAGE
        indices = range(index, index + 1)
    books = [(i, optimal_codebook(n, i)) for i in indices]
    if cfg.format == "csv":
        lines = [
            f"# n={n} count={total} error={format_rational(error)} "
            f"approx={approx_str(error)}",
            "variant,x,y",
        ]
        for i, book in books:
            lines.extend(_points_csv(book, i))
        return _emit("\n".join(lines) + "\n", cfg.output_path)
    if cfg.all_variants:
        obj = {
            "n": n,
            "count": total,
            "error": format_rational(error),
            "error_approx": approx_str(error),
            "codebooks": [
                {"variant": i, "points": [p.to_json() for p in book]}
                for i, book in books
            ],
        }
    else:
        i, book = books[0]
        obj = {
            "n": n,
            "variant": i,
            "error": format_rational(error),
            "error_approx": approx_str(error),
            "points": [p.to_json() for p in book],
        }
    return _emit(json.dumps(obj, indent=2) + "\n", cfg.output_path)


def cmd_error(cfg: RunConfig) -> int:
    value = quantization_error(cfg.n)
    print(f"{format_rational(value)} = {approx_str(value)} (approx)")
    return EXIT_OK


def cmd_distortion(cfg: RunConfig) -> int:
    path = cfg.codebook_path
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as err:
        print(f"cannot read {path}: {err}", file=sys.stderr)
        return EXIT_IO
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        print(
            f"parse error in {path} at line {err.lineno}, column {err.colno}: "
            f"{err.msg}",
            file=sys.stderr,
        )
        return EXIT_IO
    try:
        book = Codebook.from_json_obj(obj)
    except (KeyError, TypeError, ValueError) as err:
        print(f"invalid codebook in {path}: {err}", file=sys.stderr)
        return EXIT_IO
    try:
        tol = _parse_tolerance(cfg.tolerance)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return EXIT_USAGE
    interval = exact_distortion(book, tol, cfg.depth)
    print(json.dumps(interval.to_json_obj()))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    n = cfg.n
    try:
        tol = _parse_tolerance(cfg.tolerance)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return EXIT_USAGE
    target = quantization_error(n)
    print(f"n = {n}")
    print(f"closed-form error = {format_rational(target)} = {approx_str(target)} (approx)")
    total = _count_for(n)
    checked = spread_indices(total, cfg.max_variants)
    sampled = " (evenly sampled)" if len(checked) < total else ""
    print(f"variants = {total}, checking {len(checked)}{sampled}")
    failed_variants = 0
    for i in checked:
        book = optimal_codebook(n, i)
        ok = lloyd_step(book, cfg.depth) == book
        failed_variants += 0 if ok else 1
        print(f"variant {i}: fixed point {'PASS' if ok else 'FAIL'}")
    result = multistart_search(n, cfg.seeds, cfg.rng_seed, cfg.depth)
    print(f"multistart: seeds={cfg.seeds} rng_seed={cfg.rng_seed} depth={cfg.depth}")
    tally = result.tally()
    print("statuses: " + " ".join(f"{s.value}={tally[s]}" for s in RunStatus))
    best = result.best
    beaten = False
    if best is None:
        print("best upper bound = none (no run finished)")
    else:
        upper = best.interval.upper
        flag = "exact" if best.interval.exact else "interval"
        print(
            f"best upper bound = {format_rational(upper)} = "
            f"{approx_str(upper)} (approx) [{flag}, seed {best.index}]"
        )
        beaten = upper < target - tol
        if beaten:
            print(f"multistart found a better codebook than the closed form by "
                  f"{format_rational(target - upper)}")
    ok = failed_variants == 0 and not beaten
    print(f"RESULT: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_count(cfg: RunConfig) -> int:
    print(count_variants(cfg.n))
    return EXIT_OK


def cmd_plot(cfg: RunConfig) -> int:
    svg = render_svg(cfg.n, cfg.depth)
    return _emit(svg, cfg.output_path)


_HANDLERS = {
    "optimal": cmd_optimal,
    "error": cmd_error,
    "distortion": cmd_distortion,
    "verify": cmd_verify,
    "count": cmd_count,
    "plot": cmd_plot,
}


def build_parser() -> _Parser:
    parser = _Parser(
        prog="cantorquant",
        description="Optimal quantizers of the product-Cantor measure, "
        "with certified verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimal", help="construct optimal codebooks")
    p.add_argument("n", type=_positive_int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--variant", type=int, default=None)
    group.add_argument("--all", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("error", help="closed-form quantization error")
    p.add_argument("n", type=_positive_int)

    p = sub.add_parser("distortion", help="certified distortion of a codebook file")
    p.add_argument("--codebook", required=True)
    p.add_argument("--tol", default="1e-12")
    p.add_argument("--depth", type=_positive_int, default=DEFAULT_MAX_DEPTH)

    p = sub.add_parser("verify", help="cross-check variants and multistart evidence")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--seeds", type=_positive_int, default=200)
    p.add_argument("--rng-seed", type=int, default=1)
    p.add_argument("--depth", type=_positive_int, default=20)
    p.add_argument("--tol", default="1e-9")
    p.add_argument("--max-variants", type=_positive_int, default=100)

    p = sub.add_parser("count", help="number of optimal codebooks")
    p.add_argument("n", type=_at_least_two)

    p = sub.add_parser("plot", help="render support cells and codebook as SVG")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--depth", type=_positive_int, default=3)
    p.add_argument("--out", default=None)

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", 0),
        variant_index=getattr(args, "variant", None),
        all_variants=getattr(args, "all", False),
        codebook_path=getattr(args, "codebook", None),
        tolerance=getattr(args, "tol", "1e-12"),
        depth=getattr(args, "depth", 0),
        seeds=getattr(args, "seeds", 200),
        rng_seed=getattr(args, "rng_seed", 1),
        max_variants=getattr(args, "max_variants", 100),
        format=getattr(args, "format", "json"),
        output_path=getattr(args, "out", None),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from(args)
    return _HANDLERS[cfg.command](cfg)
