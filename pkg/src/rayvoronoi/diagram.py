"""Build all cells, optionally across worker processes, into a k-indexed diagram."""

from __future__ import annotations

import gc
import math
import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .cell import Cell, CellStats, build_cell
from .errors import ValidationError
from .geometry import EPS, Point
from .grid import BucketGrid, brute_force_index, build_index, spatial_order
from .world import World, validate


@dataclass(frozen=True)
class BuildConfig:
    workers: int = 1
    use_grid: bool = True
    tol: float = EPS
    debug: bool = False

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class Diagram:
    sites: Tuple[Point, ...]
    world: World
    cells: Tuple[Cell, ...]

    @property
    def stats(self) -> List[CellStats]:
        return [c.stats for c in self.cells]

    def __len__(self) -> int:
        return len(self.cells)


def partition(n: int, workers: int) -> List[range]:
    """Contiguous, near-equal blocks of cell indices, one per worker (empty blocks dropped)."""
    size = math.ceil(n / workers) if n else 0
    return [range(lo, min(lo + size, n)) for lo in range(0, n, size)] if size else []


# per-process state for the pool workers, installed by _init_worker
_STATE: dict = {}


def _init_worker(sites, world, grid, tol, debug):
    _STATE.update(sites=sites, world=world, grid=grid, tol=tol, debug=debug)


def _build_block(block: range) -> List[Cell]:
    s = _STATE
    return build_cells(block, s["sites"], s["world"], s["grid"], s["tol"], s["debug"])


def build_cells(block: range, sites, world: World, grid: BucketGrid, tol: float, debug: bool) -> List[Cell]:
    """Cells ``block`` in index order; computed in bucket order, which keeps memory access local."""
    lo, hi = block.start, block.stop
    out: List[Optional[Cell]] = [None] * (hi - lo)
    with _gc_paused():
        for k in spatial_order(grid):
            if lo <= k < hi:
                out[k - lo] = build_cell(k, sites, world, grid, tol, debug)
    return out


@contextmanager
def _gc_paused():
    # cells hold no reference cycles; generational collections triggered by the
    # many small allocations would otherwise rescan every finished cell
    was_on = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_on:
            gc.enable()


def build_diagram(sites: Sequence[Point], world: World, config: Optional[BuildConfig] = None,
                  grid: Optional[BucketGrid] = None) -> Diagram:
    """Validate the input, then compute every cell independently.

    Cells are assigned to workers in static contiguous blocks, so the result
    does not depend on the worker count.
    """
    config = config or BuildConfig()
    sites = tuple((float(x), float(y)) for x, y in sites)
    report = validate(world, sites, config.tol)
    if not report.ok:
        raise ValidationError(report)
    if grid is None:
        grid = build_index(sites, world) if config.use_grid else brute_force_index(sites, world)
    blocks = partition(len(sites), config.workers)
    if len(blocks) <= 1:
        cells = build_cells(range(len(sites)), sites, world, grid, config.tol, config.debug)
    else:
        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
        with ProcessPoolExecutor(max_workers=len(blocks), mp_context=ctx, initializer=_init_worker,
                                 initargs=(sites, world, grid, config.tol, config.debug)) as pool:
            cells = [c for chunk in pool.map(_build_block, blocks) for c in chunk]
    return Diagram(sites, world, tuple(cells))
