"""Multi-threaded generation stepping over a decomposed grid.

Each run owns two buffers.  During generation ``g`` every worker reads
``buffers[g % 2]`` and writes only its own regions of ``buffers[(g + 1) % 2]``;
a barrier separates generations.  The kernel is compiled with numba and
releases the GIL, so workers execute concurrently on separate cores.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

import numba
import numpy as np

from .decomposition import Partition, Strategy, assign_regions, partition_for
from .errors import ConfigError
from .grid import Grid


@numba.njit(nogil=True, cache=True)
def advance_regions(old, new, regions):
    """Write the next state of every cell in ``regions`` (rows of x0, y0, x1, y1)."""
    h, w = old.shape
    for r in range(regions.shape[0]):
        x0, y0, x1, y1 = regions[r, 0], regions[r, 1], regions[r, 2], regions[r, 3]
        for y in range(y0, y1):
            up = y - 1 if y > 0 else h - 1
            dn = y + 1 if y < h - 1 else 0
            for x in range(x0, x1):
                lf = x - 1 if x > 0 else w - 1
                rt = x + 1 if x < w - 1 else 0
                n = (old[up, lf] + old[up, x] + old[up, rt]
                     + old[y, lf] + old[y, rt]
                     + old[dn, lf] + old[dn, x] + old[dn, rt])
                if n == 3 or (n == 2 and old[y, x] == 1):
                    new[y, x] = 1
                else:
                    new[y, x] = 0


def region_array(regions: Sequence) -> np.ndarray:
    arr = np.array([(r.x0, r.y0, r.x1, r.y1) for r in regions], dtype=np.int64)
    return arr.reshape(-1, 4)


@dataclass(frozen=True)
class RunConfig:
    strategy: Strategy
    workers: int = 1
    iterations: int = 1

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.iterations < 0:
            raise ConfigError(f"iterations must be >= 0, got {self.iterations}")

    def partition(self, width: int, height: int) -> Partition:
        return partition_for(self.strategy, width, height, self.workers)


@dataclass
class RunStats:
    generations_computed: int = 0
    population_checkpoints: list[tuple[int, int]] = field(default_factory=list)


def _check_checkpoints(checkpoints: Sequence[int], iterations: int) -> list[int]:
    cps = [int(c) for c in checkpoints]
    for prev, cur in zip(cps, cps[1:]):
        if cur <= prev:
            raise ConfigError(f"checkpoints must be strictly increasing, got {cps}")
    if cps and (cps[0] < 0 or cps[-1] > iterations):
        raise ConfigError(f"checkpoints must lie in [0, {iterations}], got {cps}")
    return cps


class _Recorder:
    """Barrier action: advances the generation counter and samples population."""

    def __init__(self, buffers, checkpoints, stats: RunStats):
        self.buffers = buffers
        self.pending = list(checkpoints)
        self.stats = stats
        if self.pending and self.pending[0] == 0:
            self._sample(0)

    def _sample(self, gen: int) -> None:
        pop = int(np.count_nonzero(self.buffers[gen % 2]))
        self.stats.population_checkpoints.append((gen, pop))
        self.pending.pop(0)

    def __call__(self) -> None:
        self.stats.generations_computed += 1
        gen = self.stats.generations_computed
        if self.pending and self.pending[0] == gen:
            self._sample(gen)


def run(grid: Grid, config: RunConfig, checkpoints: Sequence[int] = ()) -> tuple[Grid, RunStats]:
    """Advance ``grid`` by ``config.iterations`` generations.

    Populations are sampled after each generation listed in ``checkpoints``.
    Worker threads live for the whole run and meet at a barrier after every
    generation.
    """
    cps = _check_checkpoints(checkpoints, config.iterations)
    partition = config.partition(grid.width, grid.height)

    buffers = (grid.cells.copy(), np.empty_like(grid.cells))
    stats = RunStats()
    recorder = _Recorder(buffers, cps, stats)
    iterations = config.iterations

    if config.strategy.is_serial:
        whole = region_array(partition.regions)
        for g in range(iterations):
            advance_regions(buffers[g % 2], buffers[(g + 1) % 2], whole)
            recorder()
    elif iterations:
        owned = [region_array(r) for r in assign_regions(partition, config.workers)]
        _run_threads(buffers, owned, iterations, recorder)

    return Grid(buffers[iterations % 2]), stats


def _run_threads(buffers, owned: list[np.ndarray], iterations: int, recorder: _Recorder) -> None:
    barrier = threading.Barrier(len(owned), action=recorder)
    errors: list[BaseException] = []

    def work(regions: np.ndarray) -> None:
        try:
            for g in range(iterations):
                advance_regions(buffers[g % 2], buffers[(g + 1) % 2], regions)
                barrier.wait()
        except threading.BrokenBarrierError:
            pass
        except BaseException as exc:  # surfaced in the calling thread
            errors.append(exc)
            barrier.abort()

    threads = [
        threading.Thread(target=work, args=(regions,), name=f"life-worker-{i}", daemon=True)
        for i, regions in enumerate(owned)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]
    if barrier.broken:
        raise RuntimeError("worker barrier broke without a recorded error")


def step_parallel(grid: Grid, strategy: Strategy, workers: int = 1) -> Grid:
    """One generation computed by ``workers`` threads under ``strategy``."""
    result, _ = run(grid, RunConfig(strategy, workers, 1))
    return result
