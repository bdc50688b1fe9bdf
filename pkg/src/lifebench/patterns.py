"""Pattern input and grid output.

Reads run-length encoded (``.rle``) and plaintext (``.cells``) patterns,
writes canonical RLE, fills grids with seeded random soup, and renders grids
as ASCII text or plain PBM (``P1``) images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import OutOfBounds, ParseError
from .grid import Coord, Grid, _check_dims
from .rng import SplitMix64

RLE_LINE_LIMIT = 70
PBM_LINE_LIMIT = 70

_HEADER_RE = re.compile(
    r"\s*x\s*=\s*(\d+)\s*,\s*y\s*=\s*(\d+)\s*(?:,\s*rule\s*=\s*(\S+)\s*)?$", re.IGNORECASE
)
_LIFE_RULES = {"b3/s23", "23/3", "s23/b3"}


@dataclass(frozen=True)
class Pattern:
    width: int
    height: int
    live_cells: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.width < 0 or self.height < 0:
            raise ValueError(f"negative pattern size {self.width}x{self.height}")
        cells = frozenset((int(x), int(y)) for x, y in self.live_cells)
        for x, y in cells:
            if not (0 <= x < self.width and 0 <= y < self.height):
                raise ValueError(f"live cell ({x}, {y}) outside {self.width}x{self.height}")
        object.__setattr__(self, "live_cells", cells)

    @property
    def population(self) -> int:
        return len(self.live_cells)

    @classmethod
    def from_grid(cls, grid: Grid) -> Pattern:
        return cls(grid.width, grid.height, frozenset(grid.live_cells()))

    def to_array(self) -> np.ndarray:
        cells = np.zeros((self.height, self.width), dtype=np.uint8)
        for x, y in self.live_cells:
            cells[y, x] = 1
        return cells


def parse_rle(text: str) -> Pattern:
    """Decode an RLE pattern.

    Without an ``x = W, y = H`` header the pattern takes the tight size of
    its rows.  A count before ``$`` skips that many rows.  Text after ``!``
    is ignored.
    """
    width = height = None
    live: set[tuple[int, int]] = set()
    x = y = 0
    max_x = 0
    count = ""
    count_at: tuple[int, int] | None = None
    done = False

    for lineno, line in enumerate(text.splitlines(), start=1):
        if done:
            break
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if width is None and not live and x == 0 and y == 0 and stripped.lower().startswith("x"):
            match = _HEADER_RE.match(stripped)
            if not match:
                raise ParseError(f"malformed header {stripped!r}", lineno, 1)
            width, height = int(match.group(1)), int(match.group(2))
            rule = match.group(3)
            if rule is not None and rule.lower() not in _LIFE_RULES:
                raise ParseError(f"unsupported rule {rule!r}, only B3/S23", lineno)
            continue

        for col, ch in enumerate(line, start=1):
            if ch.isspace():
                continue
            if ch.isdigit():
                if not count:
                    count_at = (lineno, col)
                count += ch
                continue
            run = int(count) if count else 1
            if count and run == 0:
                raise ParseError("run count must be positive", *count_at)
            count = ""
            if ch == "!":
                done = True
                break
            if ch == "$":
                y += run
                x = 0
                continue
            if ch not in "bo":
                raise ParseError(f"unexpected character {ch!r}", lineno, col)
            if width is not None and x + run > width:
                raise ParseError(f"run of {run} exceeds declared width {width}", lineno, col)
            if height is not None and y >= height and ch == "o":
                raise ParseError(f"row {y} exceeds declared height {height}", lineno, col)
            if ch == "o":
                live.update((x + i, y) for i in range(run))
            x += run
            max_x = max(max_x, x)

    if count:
        raise ParseError(f"run count {count} is not followed by a tag", *count_at)

    if width is None:
        width = max_x
        height = max((cy for _, cy in live), default=-1) + 1
    return Pattern(width, height, frozenset(live))


def _row_runs(row: np.ndarray) -> list[tuple[int, str]]:
    runs: list[tuple[int, str]] = []
    for cell in row:
        tag = "o" if cell else "b"
        if runs and runs[-1][1] == tag:
            runs[-1] = (runs[-1][0] + 1, tag)
        else:
            runs.append((1, tag))
    if runs and runs[-1][1] == "b":
        runs.pop()
    return runs


def _token(n: int, tag: str) -> str:
    return f"{n}{tag}" if n > 1 else tag


def serialize_rle(p: Pattern) -> str:
    """Canonical RLE: maximal runs, no trailing dead cells or blank rows."""
    tokens: list[str] = []
    pending_rows = 0
    cells = p.to_array()
    for row in cells:
        runs = _row_runs(row)
        if not runs:
            pending_rows += 1
            continue
        if pending_rows:
            tokens.append(_token(pending_rows, "$"))
        tokens.extend(_token(n, tag) for n, tag in runs)
        pending_rows = 1
    tokens.append("!")

    lines, current = [], ""
    for tok in tokens:
        if current and len(current) + len(tok) > RLE_LINE_LIMIT:
            lines.append(current)
            current = ""
        current += tok
    lines.append(current)
    return f"x = {p.width}, y = {p.height}\n" + "\n".join(lines)


def parse_plaintext(text: str) -> Pattern:
    """Decode a ``.cells`` pattern: ``O`` alive, ``.`` dead, ``!`` comment lines."""
    rows: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("!"):
            continue
        rows.append((lineno, line.rstrip()))
    while rows and not rows[-1][1]:
        rows.pop()

    live = set()
    width = 0
    for y, (lineno, line) in enumerate(rows):
        for x, ch in enumerate(line):
            if ch == "O":
                live.add((x, y))
            elif ch != "." and not ch.isspace():
                raise ParseError(f"unexpected character {ch!r}", lineno, x + 1)
        width = max(width, len(line))
    return Pattern(width, len(rows), frozenset(live))


def load_pattern(path: str | Path) -> Pattern:
    path = Path(path)
    text = path.read_text()
    suffix = path.suffix.lower()
    if suffix == ".rle":
        return parse_rle(text)
    if suffix in (".cells", ".txt"):
        return parse_plaintext(text)
    raise ParseError(f"unknown pattern format {suffix!r}, expected .rle or .cells")


def place_pattern(grid: Grid, p: Pattern, origin: Coord | tuple[int, int] = (0, 0)) -> Grid:
    """Stamp ``p`` onto ``grid`` with its top-left corner at ``origin``.

    The whole footprint is overwritten, dead cells included.  Placement
    never wraps around the grid edges.
    """
    ox, oy = origin
    if ox < 0 or oy < 0 or ox + p.width > grid.width or oy + p.height > grid.height:
        raise OutOfBounds(
            f"{p.width}x{p.height} pattern at ({ox}, {oy}) does not fit "
            f"a {grid.width}x{grid.height} grid"
        )
    cells = grid.cells.copy()
    cells[oy:oy + p.height, ox:ox + p.width] = p.to_array()
    return Grid(cells)


def random_fill(width: int, height: int, density: float = 0.3, seed: int = 0) -> Grid:
    """Soup where each cell is alive with probability ``density``.

    Cells draw from one SplitMix64 stream in row-major order, so the result
    depends only on the arguments.
    """
    _check_dims(width, height)
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    draws = SplitMix64(seed).float_array(width * height)
    return Grid((draws < density).astype(np.uint8).reshape(height, width))


def render_ascii(grid: Grid) -> str:
    chars = np.where(grid.cells == 1, "#", ".")
    return "\n".join("".join(row) for row in chars)


def render_pbm(grid: Grid) -> bytes:
    """Plain PBM: ``1`` is a live (black) cell, ``0`` a dead (white) one."""
    per_line = (PBM_LINE_LIMIT + 1) // 2
    lines = ["P1", f"{grid.width} {grid.height}"]
    for row in grid.cells:
        bits = [str(int(v)) for v in row]
        for i in range(0, len(bits), per_line):
            lines.append(" ".join(bits[i:i + per_line]))
    return ("\n".join(lines) + "\n").encode("ascii")
