"""``life-bench`` command line.

Exit codes: 0 on success, 2 for configuration errors, 3 for pattern parse
errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import bench
from .decomposition import Strategy
from .engine import RunConfig, run
from .errors import ConfigError, ParseError
from .grid import new_grid, population
from .patterns import load_pattern, place_pattern, random_fill, render_ascii, render_pbm

log = logging.getLogger("lifebench")

EXIT_CONFIG = 2
EXIT_PARSE = 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for item in text.split(","):
        try:
            w, h = item.lower().split("x")
            sizes.append((int(w), int(h)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected WxH sizes, got {item!r}")
    return sizes


def _strategy(text: str) -> Strategy:
    try:
        return Strategy.parse(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _strategies(text: str) -> list[Strategy]:
    return [_strategy(s) for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="life-bench",
        description="Parallel Game of Life with row, column and block decompositions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate one configuration")
    p.add_argument("--width", type=int, default=120)
    p.add_argument("--height", type=int, default=60)
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--strategy", type=_strategy, default=Strategy.serial(),
                   help="serial, rows, cols or blocks:MxN")
    p.add_argument("--workers", type=int, default=1)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--pattern", type=Path, help=".rle or .cells file, centred on the grid")
    src.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=bench.DEFAULT_DENSITY)
    p.add_argument("--render", choices=("none", "ascii", "pbm"), default="none")
    p.add_argument("--out", type=Path, help="write the rendered final grid here")
    p.add_argument("--checkpoints", type=_int_list, default=[])

    b = sub.add_parser("bench", help="time a strategy x workers x size x iterations matrix")
    b.add_argument("--sizes", type=_sizes, default=list(bench.PAPER_SIZES))
    b.add_argument("--iterations", type=_int_list, default=list(bench.PAPER_ITERATIONS))
    b.add_argument("--strategies", type=_strategies,
                   default=_strategies("serial,rows,cols,blocks:2x2"))
    b.add_argument("--workers", type=_int_list, default=list(bench.PAPER_WORKERS))
    b.add_argument("--repetitions", type=int, default=5)
    b.add_argument("--warmup", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--density", type=float, default=bench.DEFAULT_DENSITY)
    b.add_argument("--csv", type=Path, help="CSV output path (default: stdout)")
    return parser


def cmd_run(args: argparse.Namespace) -> int:
    if args.pattern is not None:
        pattern = load_pattern(args.pattern)
        origin = ((args.width - pattern.width) // 2, (args.height - pattern.height) // 2)
        grid = place_pattern(new_grid(args.width, args.height), pattern, origin)
    else:
        grid = random_fill(args.width, args.height, args.density, args.seed)

    config = RunConfig(args.strategy, args.workers, args.iterations)
    start = time.perf_counter()
    final, stats = run(grid, config, args.checkpoints)
    elapsed = time.perf_counter() - start

    for it, pop in stats.population_checkpoints:
        print(f"{it}\t{pop}")
    print(f"# {args.iterations} iterations, {args.strategy}/{args.workers}: "
          f"{elapsed:.3f} s, final population {population(final)}", file=sys.stderr)

    if args.render != "none":
        data = render_pbm(final) if args.render == "pbm" else (render_ascii(final) + "\n").encode()
        if args.out is not None:
            args.out.write_bytes(data)
        else:
            sys.stdout.write(data.decode())
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    records = []
    for width, height in args.sizes:
        for iterations in args.iterations:
            config = bench.BenchConfig(
                width, height, iterations, tuple(args.strategies), tuple(args.workers),
                repetitions=args.repetitions, warmup_runs=args.warmup,
                seed=args.seed, density=args.density,
            )
            log.info("benchmarking %dx%d, %d iterations", width, height, iterations)
            records.extend(bench.bench_matrix(config))

    text = bench.emit_csv(records)
    if args.csv is not None:
        args.csv.write_text(text)
    else:
        sys.stdout.write(text)
    print(bench.format_table(records), file=sys.stderr)
    fit = bench.fit_report(records)
    if fit:
        print(fit, file=sys.stderr)
    if any(r.workers > r.hardware_threads for r in records):
        print(f"# note: worker counts above {records[0].hardware_threads} hardware threads "
              "are oversubscribed", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "run":
            return cmd_run(args)
        return cmd_bench(args)
    except ParseError as exc:
        print(f"life-bench: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, ValueError, OSError) as exc:
        print(f"life-bench: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
