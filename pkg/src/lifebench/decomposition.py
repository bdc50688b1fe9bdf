"""Domain decomposition of a grid into per-worker rectangles.

Three strategies are supported besides plain serial execution: full-width
row bands, full-height column bands, and an ``m x n`` block grid.  When a
dimension does not divide evenly the first ``dim % parts`` bands get one
extra row or column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError, TooManyParts


@dataclass(frozen=True, order=True)
class SubRegion:
    """Half-open rectangle ``[x0, x1) x [y0, y1)``."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self) -> None:
        if not (0 <= self.x0 < self.x1 and 0 <= self.y0 < self.y1):
            raise ValueError(f"empty or negative region {self}")

    @property
    def width(self) -> int:
        return self.x1 - self.x0

    @property
    def height(self) -> int:
        return self.y1 - self.y0

    @property
    def area(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class Partition:
    regions: tuple[SubRegion, ...]
    grid_width: int
    grid_height: int

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self):
        return iter(self.regions)


class Kind(Enum):
    SERIAL = "serial"
    ROWS = "rows"
    COLS = "cols"
    BLOCKS = "blocks"


@dataclass(frozen=True)
class Strategy:
    kind: Kind
    m: int = 1  # block-grid columns
    n: int = 1  # block-grid rows

    def __post_init__(self) -> None:
        if self.kind is Kind.BLOCKS and (self.m < 1 or self.n < 1):
            raise ConfigError(f"blocks strategy needs m, n >= 1, got {self.m}x{self.n}")

    @classmethod
    def serial(cls) -> Strategy:
        return cls(Kind.SERIAL)

    @classmethod
    def rows(cls) -> Strategy:
        return cls(Kind.ROWS)

    @classmethod
    def cols(cls) -> Strategy:
        return cls(Kind.COLS)

    @classmethod
    def blocks(cls, m: int, n: int) -> Strategy:
        return cls(Kind.BLOCKS, m, n)

    @classmethod
    def parse(cls, text: str) -> Strategy:
        """Parse ``serial``, ``rows``, ``cols`` or ``blocks:MxN``."""
        text = text.strip().lower()
        match = re.fullmatch(r"blocks:(\d+)x(\d+)", text)
        if match:
            return cls.blocks(int(match.group(1)), int(match.group(2)))
        try:
            kind = Kind(text)
        except ValueError:
            raise ConfigError(f"unknown strategy {text!r}") from None
        if kind is Kind.BLOCKS:
            raise ConfigError("blocks strategy needs a shape, e.g. blocks:2x2")
        return cls(kind)

    @property
    def is_serial(self) -> bool:
        return self.kind is Kind.SERIAL

    def sort_key(self) -> tuple[int, int, int]:
        return (list(Kind).index(self.kind), self.m, self.n)

    def __str__(self) -> str:
        if self.kind is Kind.BLOCKS:
            return f"blocks:{self.m}x{self.n}"
        return self.kind.value


def _bands(length: int, parts: int, axis: str) -> list[tuple[int, int]]:
    if parts < 1:
        raise ConfigError(f"part count must be >= 1, got {parts}")
    if parts > length:
        raise TooManyParts(f"cannot split {length} {axis} into {parts} non-empty bands")
    base, extra = divmod(length, parts)
    bounds = []
    start = 0
    for i in range(parts):
        stop = start + base + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def partition_rows(height: int, parts: int, width: int = 1) -> Partition:
    """Split rows into ``parts`` contiguous full-width bands, top to bottom."""
    regions = tuple(SubRegion(0, y0, width, y1) for y0, y1 in _bands(height, parts, "rows"))
    return Partition(regions, width, height)


def partition_cols(width: int, parts: int, height: int = 1) -> Partition:
    """Split columns into ``parts`` contiguous full-height bands, left to right."""
    regions = tuple(SubRegion(x0, 0, x1, height) for x0, x1 in _bands(width, parts, "columns"))
    return Partition(regions, width, height)


def partition_blocks(width: int, height: int, m: int, n: int) -> Partition:
    """Cross ``m`` column bands with ``n`` row bands; regions in row-major order."""
    xs = _bands(width, m, "columns")
    ys = _bands(height, n, "rows")
    regions = tuple(SubRegion(x0, y0, x1, y1) for y0, y1 in ys for x0, x1 in xs)
    return Partition(regions, width, height)


def partition_for(strategy: Strategy, width: int, height: int, workers: int) -> Partition:
    """Partition a ``width x height`` grid the way ``strategy`` would for ``workers``."""
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    if strategy.kind is Kind.SERIAL:
        return Partition((SubRegion(0, 0, width, height),), width, height)
    if strategy.kind is Kind.ROWS:
        return partition_rows(height, workers, width)
    if strategy.kind is Kind.COLS:
        return partition_cols(width, workers, height)
    return partition_blocks(width, height, strategy.m, strategy.n)


def assign_regions(partition: Partition, workers: int) -> list[list[SubRegion]]:
    """Deal regions round-robin to ``workers``; some lists may be empty."""
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    owned: list[list[SubRegion]] = [[] for _ in range(workers)]
    for i, region in enumerate(partition.regions):
        owned[i % workers].append(region)
    return owned


def validate_partition(p: Partition) -> str | None:
    """Check exact cover of the grid.

    Returns ``None`` when every cell is covered exactly once, otherwise a
    description of the first offending cell in row-major order.
    """
    w, h = p.grid_width, p.grid_height
    if w < 1 or h < 1:
        return f"degenerate grid {w}x{h}"
    hits = np.zeros((h, w), dtype=np.int64)
    for i, r in enumerate(p.regions):
        if r.x1 > w or r.y1 > h:
            return f"region {i} {r} extends outside the {w}x{h} grid"
        hits[r.y0:r.y1, r.x0:r.x1] += 1
    bad = np.argwhere(hits != 1)
    if bad.size == 0:
        return None
    y, x = (int(v) for v in bad[0])
    if hits[y, x] == 0:
        return f"cell ({x}, {y}) is not covered"
    return f"cell ({x}, {y}) is covered {hits[y, x]} times"
