"""The Life universe: a finite toroidal grid and the B3/S23 rule.

Cells are stored densely, row-major, as a ``(height, width)`` uint8 array
holding only 0 (dead) and 1 (alive).  Published grids are read-only; every
generation is written into a fresh buffer.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

import numpy as np

from .errors import DimensionTooSmall

MIN_DIM = 3

# the eight (dx, dy) neighbour offsets
OFFSETS = tuple((dx, dy) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if dx or dy)


class CellState(IntEnum):
    DEAD = 0
    ALIVE = 1


class Coord(NamedTuple):
    x: int
    y: int


def _check_dims(width: int, height: int) -> None:
    if width < MIN_DIM or height < MIN_DIM:
        raise DimensionTooSmall(
            f"grid must be at least {MIN_DIM}x{MIN_DIM}, got {width}x{height}"
        )


@dataclass(frozen=True, eq=False)
class Grid:
    """Immutable toroidal cell field.

    ``cells[y, x]`` is the state of column ``x`` in row ``y``.
    """

    cells: np.ndarray

    def __post_init__(self) -> None:
        cells = np.asarray(self.cells)
        if cells.ndim != 2:
            raise ValueError(f"cells must be 2-D, got shape {cells.shape}")
        if cells.dtype != np.uint8:
            if cells.dtype != bool and cells.size and not np.isin(cells, (0, 1)).all():
                raise ValueError("cells must hold only 0 (dead) or 1 (alive)")
            cells = cells.astype(np.uint8)
        elif cells.size and cells.max() > 1:
            raise ValueError("cells must hold only 0 (dead) or 1 (alive)")
        _check_dims(cells.shape[1], cells.shape[0])
        if cells.flags.writeable:
            cells = cells.copy()
            cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def __getitem__(self, at: tuple[int, int]) -> CellState:
        x, y = at
        return CellState(int(self.cells[y % self.height, x % self.width]))

    def with_cells(self, updates: dict[tuple[int, int], CellState | int | bool]) -> Grid:
        """Return a copy with the given ``(x, y)`` cells overwritten."""
        cells = self.cells.copy()
        for (x, y), state in updates.items():
            cells[y, x] = int(bool(state))
        return Grid(cells)

    def live_cells(self) -> set[tuple[int, int]]:
        ys, xs = np.nonzero(self.cells)
        return {(int(x), int(y)) for x, y in zip(xs, ys)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.cells, other.cells))

    def __hash__(self) -> int:
        return hash((self.shape, self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"Grid({self.width}x{self.height}, population={population(self)})"


def new_grid(width: int, height: int) -> Grid:
    """All-dead grid of the given size."""
    _check_dims(width, height)
    return Grid(np.zeros((height, width), dtype=np.uint8))


def from_live_cells(width: int, height: int, live: set[tuple[int, int]] | list) -> Grid:
    _check_dims(width, height)
    cells = np.zeros((height, width), dtype=np.uint8)
    for x, y in live:
        cells[y, x] = 1
    return Grid(cells)


def neighbor_count(grid: Grid, at: Coord | tuple[int, int]) -> int:
    """Number of live cells among the eight wrapped neighbours of ``at``."""
    x, y = at
    h, w = grid.shape
    c = grid.cells
    return int(sum(c[(y + dy) % h, (x + dx) % w] for dx, dy in OFFSETS))


def next_state(current: CellState | int | bool, live_neighbors: int) -> CellState:
    if not 0 <= live_neighbors <= 8:
        raise ValueError(f"live_neighbors must be in [0, 8], got {live_neighbors}")
    if live_neighbors == 3 or (current and live_neighbors == 2):
        return CellState.ALIVE
    return CellState.DEAD


def count_neighbors(cells: np.ndarray) -> np.ndarray:
    """Whole-array wrapped neighbour counts via shifted copies."""
    counts = np.zeros(cells.shape, dtype=np.uint8)
    for dx, dy in OFFSETS:
        counts += np.roll(cells, shift=(-dy, -dx), axis=(0, 1))
    return counts


def step_serial(grid: Grid) -> Grid:
    """Advance one generation on a single thread.

    Neighbour counts are taken from the old buffer in full before any cell
    of the new buffer is decided, so the update is synchronous.
    """
    old = grid.cells
    counts = count_neighbors(old)
    new = ((counts == 3) | ((counts == 2) & (old == 1))).astype(np.uint8)
    return Grid(new)


def population(grid: Grid) -> int:
    return int(np.count_nonzero(grid.cells))
