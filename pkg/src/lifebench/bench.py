"""Timing, speedup and report generation.

A benchmark matrix times one serial baseline per (size, iterations) cell
and every parallel (strategy, workers) pair against it.  The one-worker
column of a matrix is the serial baseline itself, so parallel strategies
are only swept over worker counts above one.
"""

from __future__ import annotations

import csv
import io
import os
import statistics
import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .decomposition import Strategy
from .engine import RunConfig, run
from .errors import ConfigError, NonPositiveTime
from .grid import Grid, population
from .patterns import random_fill

DEFAULT_DENSITY = 0.3
PAPER_SIZES = ((120, 60), (240, 120))
PAPER_ITERATIONS = (500, 1000, 2000)
PAPER_WORKERS = (1, 2, 4, 8)
PAPER_CHECKPOINTS = (100, 200, 500, 1000, 2000)

CSV_HEADER = (
    "width", "height", "iterations", "strategy", "workers", "seed", "density",
    "repetitions", "median_s", "speedup", "hardware_threads", "final_population",
)


def hardware_threads() -> int:
    return os.cpu_count() or 1


def speedup(serial_time: float, parallel_time: float) -> float:
    if serial_time <= 0 or parallel_time <= 0:
        raise NonPositiveTime(
            f"times must be positive, got serial={serial_time}, parallel={parallel_time}"
        )
    return serial_time / parallel_time


@dataclass(frozen=True)
class BenchConfig:
    width: int
    height: int
    iterations: int
    strategies: tuple[Strategy, ...]
    worker_counts: tuple[int, ...]
    repetitions: int = 5
    warmup_runs: int = 1
    seed: int = 0
    density: float = DEFAULT_DENSITY
    checkpoints: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "strategies", tuple(self.strategies))
        object.__setattr__(self, "worker_counts", tuple(self.worker_counts))
        object.__setattr__(self, "checkpoints", tuple(self.checkpoints))
        if not self.strategies:
            raise ConfigError("at least one strategy is required")
        if not self.worker_counts:
            raise ConfigError("at least one worker count is required")
        if any(w < 1 for w in self.worker_counts):
            raise ConfigError(f"worker counts must be >= 1, got {self.worker_counts}")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.repetitions < 1:
            raise ConfigError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.warmup_runs < 0:
            raise ConfigError(f"warmup runs must be >= 0, got {self.warmup_runs}")
        if not 0.0 <= self.density <= 1.0:
            raise ConfigError(f"density must be in [0, 1], got {self.density}")
        if any(c > self.iterations for c in self.checkpoints):
            raise ConfigError(f"checkpoints must not exceed {self.iterations} iterations")

    def runs(self) -> list[tuple[Strategy, int]]:
        """(strategy, workers) pairs in report order, serial baseline first."""
        pairs = {(Strategy.serial(), 1)}
        for s in self.strategies:
            if s.is_serial:
                continue
            pairs.update((s, w) for w in self.worker_counts if w > 1)
        return sorted(pairs, key=lambda p: (p[0].sort_key(), p[1]))


@dataclass(frozen=True)
class BenchRecord:
    width: int
    height: int
    iterations: int
    strategy: Strategy
    workers: int
    seed: int
    density: float
    repetitions: int
    warmup_runs: int
    all_times: tuple[float, ...]
    median_wall_time: float
    hardware_threads: int
    final_population: int
    speedup: float | None = None
    population_checkpoints: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def is_baseline(self) -> bool:
        return self.strategy.is_serial


def time_run(
    width: int,
    height: int,
    iterations: int,
    strategy: Strategy,
    workers: int = 1,
    seed: int = 0,
    density: float = DEFAULT_DENSITY,
    repetitions: int = 5,
    warmup_runs: int = 1,
    checkpoints: Sequence[int] = (),
    initial: Grid | None = None,
) -> BenchRecord:
    """Time ``repetitions`` full runs from one initial grid and keep the median.

    Only the generation loop is timed; building the soup happens once,
    before any warmup.  Serial records carry a speedup of exactly 1.0;
    parallel records get theirs from ``bench_matrix``.
    """
    if repetitions < 1:
        raise ConfigError(f"repetitions must be >= 1, got {repetitions}")
    if warmup_runs < 0:
        raise ConfigError(f"warmup runs must be >= 0, got {warmup_runs}")
    grid = initial if initial is not None else random_fill(width, height, density, seed)
    config = RunConfig(strategy, workers, iterations)
    config.partition(grid.width, grid.height)  # fail before any timing

    for _ in range(warmup_runs):
        run(grid, config, checkpoints)

    times = []
    for _ in range(repetitions):
        start = time.perf_counter()
        final, stats = run(grid, config, checkpoints)
        times.append(time.perf_counter() - start)

    return BenchRecord(
        width=grid.width,
        height=grid.height,
        iterations=iterations,
        strategy=strategy,
        workers=1 if strategy.is_serial else workers,
        seed=seed,
        density=density,
        repetitions=repetitions,
        warmup_runs=warmup_runs,
        all_times=tuple(times),
        median_wall_time=statistics.median(times),
        hardware_threads=hardware_threads(),
        final_population=population(final),
        speedup=1.0 if strategy.is_serial else None,
        population_checkpoints=tuple(stats.population_checkpoints),
    )


def bench_matrix(config: BenchConfig) -> list[BenchRecord]:
    """Run the serial baseline and every parallel pair of ``config``, in order."""
    initial = random_fill(config.width, config.height, config.density, config.seed)
    records = []
    for strategy, workers in config.runs():
        records.append(time_run(
            config.width, config.height, config.iterations, strategy, workers,
            seed=config.seed, density=config.density, repetitions=config.repetitions,
            warmup_runs=config.warmup_runs, checkpoints=config.checkpoints, initial=initial,
        ))
    baseline = records[0].median_wall_time
    return [r if r.is_baseline else replace(r, speedup=speedup(baseline, r.median_wall_time))
            for r in records]


def population_series(
    width: int,
    height: int,
    seed: int,
    density: float,
    strategy: Strategy,
    workers: int,
    checkpoints: Sequence[int] = PAPER_CHECKPOINTS,
    initial: Grid | None = None,
) -> list[tuple[int, int]]:
    """Live-cell counts after each checkpoint generation."""
    grid = initial if initial is not None else random_fill(width, height, density, seed)
    iterations = max(checkpoints, default=0)
    _, stats = run(grid, RunConfig(strategy, workers, iterations), checkpoints)
    return stats.population_checkpoints


def emit_csv(records: Iterable[BenchRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([
            r.width, r.height, r.iterations, str(r.strategy), r.workers, r.seed,
            r.density, r.repetitions, f"{r.median_wall_time:.3f}",
            "" if r.speedup is None else f"{r.speedup:.2f}",
            r.hardware_threads, r.final_population,
        ])
    return out.getvalue()


def linear_fit(iterations: Sequence[float], times: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares ``time = slope * iterations + intercept``; returns (slope, intercept, r2)."""
    x = np.asarray(iterations, dtype=float)
    y = np.asarray(times, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two points for a linear fit")
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sum((y - (slope * x + intercept)) ** 2))
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - residual / total if total > 0 else 1.0
    return float(slope), float(intercept), r2


def format_table(records: Sequence[BenchRecord]) -> str:
    """Text table in the time/speedup layout, one line per (size, iterations) cell."""
    cells: dict[tuple[int, int, int], list[BenchRecord]] = {}
    for r in records:
        cells.setdefault((r.width, r.height, r.iterations), []).append(r)
    lines = []
    for (w, h, it), recs in cells.items():
        parts = []
        for r in recs:
            sp = "-" if r.speedup is None else f"{r.speedup:.2f}"
            parts.append(f"{r.strategy}/{r.workers}: {r.median_wall_time:.3f}/{sp}")
        lines.append(f"{it} iterations({w} * {h})  " + "  ".join(parts))
    return "\n".join(lines)


def fit_report(records: Sequence[BenchRecord]) -> str:
    """Linear fit of median time against iterations for every (size, strategy, workers)."""
    groups: dict[tuple, list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.width, r.height, str(r.strategy), r.workers), []).append(r)
    lines = []
    for (w, h, s, k), recs in groups.items():
        if len({r.iterations for r in recs}) < 2:
            continue
        slope, intercept, r2 = linear_fit(
            [r.iterations for r in recs], [r.median_wall_time for r in recs]
        )
        lines.append(
            f"{w}x{h} {s}/{k}: {slope * 1e3:.4f} ms/iteration, "
            f"intercept {intercept:.4f} s, r2 {r2:.4f}"
        )
    return "\n".join(lines)
