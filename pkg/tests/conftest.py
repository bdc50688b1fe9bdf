import contextlib

import numpy as np
import pytest

from lifebench import Grid, from_live_cells, neighbor_count, next_state

GLIDER = {(1, 0), (2, 1), (0, 2), (1, 2), (2, 2)}
BLINKER_ROW = {(1, 2), (2, 2), (3, 2)}

_acceptance_lines: list[str] = []


def reference_step(grid: Grid) -> Grid:
    """Cell-by-cell oracle built only from neighbor_count and next_state."""
    cells = np.zeros(grid.shape, dtype=np.uint8)
    for y in range(grid.height):
        for x in range(grid.width):
            cells[y, x] = next_state(grid[x, y], neighbor_count(grid, (x, y)))
    return Grid(cells)


@pytest.fixture
def blinker():
    return from_live_cells(5, 5, BLINKER_ROW)


@pytest.fixture
def glider16():
    return from_live_cells(16, 16, GLIDER)


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def _criterion(label: str):
        info: dict = {}
        try:
            yield info
        except pytest.skip.Exception as exc:
            _acceptance_lines.append(f"SKIP  {label}: {exc}")
            raise
        except BaseException:
            _acceptance_lines.append(f"FAIL  {label} {info.get('detail', '')}".rstrip())
            raise
        _acceptance_lines.append(f"PASS  {label} {info.get('detail', '')}".rstrip())

    return _criterion


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
