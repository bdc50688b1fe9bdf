"""Parallel Game of Life engine and speedup benchmark harness."""

from .bench import (
    BenchConfig, BenchRecord, bench_matrix, emit_csv, linear_fit, population_series,
    speedup, time_run,
)
from .decomposition import (
    Kind, Partition, Strategy, SubRegion, assign_regions, partition_blocks, partition_cols,
    partition_for, partition_rows, validate_partition,
)
from .engine import RunConfig, RunStats, run, step_parallel
from .errors import (
    ConfigError, DimensionTooSmall, LifeError, NonPositiveTime, OutOfBounds, ParseError,
    TooManyParts,
)
from .grid import (
    CellState, Coord, Grid, from_live_cells, neighbor_count, new_grid, next_state,
    population, step_serial,
)
from .patterns import (
    Pattern, load_pattern, parse_plaintext, parse_rle, place_pattern, random_fill,
    render_ascii, render_pbm, serialize_rle,
)
from .rng import SplitMix64

__version__ = "0.1.0"
