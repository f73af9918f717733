"""Uniform bucket grid over the sites, used to keep distance comparisons local."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import chain
from typing import Iterator, List, Sequence, Tuple

from .geometry import Point
from .world import World

# rings covered by the precomputed offset table; walks going farther fall back to ring()
OFFSET_RINGS = 6


def ring_offsets(r: int) -> List[Tuple[int, int]]:
    """Offsets ``(di, dj)`` at Chebyshev distance exactly ``r``, in a fixed order."""
    if r == 0:
        return [(0, 0)]
    out = [(di, -r) for di in range(-r, r + 1)]
    out += [(di, r) for di in range(-r, r + 1)]
    out += [(-r, dj) for dj in range(-r + 1, r)]
    out += [(r, dj) for dj in range(-r + 1, r)]
    return out


_OFFSETS = [(r, di, dj) for r in range(OFFSET_RINGS + 1) for di, dj in ring_offsets(r)]


@dataclass
class BucketGrid:
    nx: int
    ny: int
    x0: float
    y0: float
    wx: float
    wy: float
    buckets: List[List[int]]
    # number of site insertions performed while building (one per site)
    inserted: int = 0
    # per bucket, (k, x, y) for its sites; allocated bucket by bucket so that
    # neighbouring sites are also close in memory
    entries: List[Tuple[Tuple[int, float, float], ...]] = field(default_factory=list, repr=False)
    offsets: List[Tuple[int, int, int]] = field(default_factory=lambda: _OFFSETS, repr=False)

    @property
    def scale(self) -> float:
        return math.hypot(self.nx * self.wx, self.ny * self.wy)

    @property
    def is_trivial(self) -> bool:
        return self.nx == 1 and self.ny == 1

    def bucket_of(self, x: float, y: float) -> Tuple[int, int]:
        i = int((x - self.x0) / self.wx)
        j = int((y - self.y0) / self.wy)
        return min(max(i, 0), self.nx - 1), min(max(j, 0), self.ny - 1)

    def rect_dist2(self, i: int, j: int, x: float, y: float) -> float:
        """Squared distance from ``(x, y)`` to bucket ``(i, j)``'s rectangle."""
        lo = self.x0 + i * self.wx
        dx = lo - x if x < lo else (x - lo - self.wx if x > lo + self.wx else 0.0)
        lo = self.y0 + j * self.wy
        dy = lo - y if y < lo else (y - lo - self.wy if y > lo + self.wy else 0.0)
        return dx * dx + dy * dy

    def ring(self, ci: int, cj: int, r: int) -> Iterator[Tuple[int, int]]:
        """Buckets at Chebyshev distance exactly ``r`` from ``(ci, cj)``, clipped to the grid."""
        nx, ny = self.nx, self.ny
        for di, dj in ring_offsets(r):
            i, j = ci + di, cj + dj
            if 0 <= i < nx and 0 <= j < ny:
                yield i, j

    def walk_offsets(self) -> Iterator[Tuple[int, int, int]]:
        """``(ring, di, dj)`` ring by ring outward, unclipped; callers bounds-check."""
        return chain(self.offsets, self._far_offsets())

    def _far_offsets(self) -> Iterator[Tuple[int, int, int]]:
        for r in range(OFFSET_RINGS + 1, self.max_ring() + 1):
            for di, dj in ring_offsets(r):
                yield r, di, dj

    def walk(self, ci: int, cj: int) -> Iterator[Tuple[int, int, int]]:
        """``(ring, i, j)`` for every bucket, ring by ring outward from ``(ci, cj)``."""
        nx, ny = self.nx, self.ny
        for r, di, dj in self.walk_offsets():
            i, j = ci + di, cj + dj
            if 0 <= i < nx and 0 <= j < ny:
                yield r, i, j

    def max_ring(self) -> int:
        return max(self.nx, self.ny)


def build_index(sites: Sequence[Point], world: World, per_axis: int | None = None) -> BucketGrid:
    """Hash every site once into a ``ceil(sqrt(n))``-per-axis grid over the world's bounding box."""
    n = len(sites)
    m = per_axis if per_axis is not None else max(1, math.ceil(math.sqrt(n)))
    x0, y0, x1, y1 = world.bbox
    grid = BucketGrid(m, m, x0, y0, (x1 - x0) / m, (y1 - y0) / m, [[] for _ in range(m * m)])
    buckets = grid.buckets
    for k, (x, y) in enumerate(sites):
        i, j = grid.bucket_of(x, y)
        buckets[i + m * j].append(k)
        grid.inserted += 1
    grid.entries = [tuple((k, sites[k][0], sites[k][1]) for k in b) for b in buckets]
    return grid


def spatial_order(grid: BucketGrid) -> List[int]:
    """Site indices bucket by bucket, rows alternating direction."""
    out: List[int] = []
    for j in range(grid.ny):
        cols = range(grid.nx) if j % 2 == 0 else range(grid.nx - 1, -1, -1)
        for i in cols:
            out.extend(grid.buckets[i + grid.nx * j])
    return out


def brute_force_index(sites: Sequence[Point], world: World) -> BucketGrid:
    """A single bucket holding every site: queries degrade to full scans."""
    return build_index(sites, world, per_axis=1)


def sites_within(grid: BucketGrid, center: Point, radius: float) -> Iterator[int]:
    """Yield a superset of the sites within ``radius`` of ``center``, nearest rings first."""
    cx, cy = center
    ci, cj = grid.bucket_of(cx, cy)
    r2 = radius * radius
    wmin = min(grid.wx, grid.wy)
    for r, i, j in grid.walk(ci, cj):
        # every bucket in ring r is at least (r - 1) * wmin away from center
        if r >= 2 and (r - 1) * wmin > radius:
            break
        if grid.rect_dist2(i, j, cx, cy) <= r2:
            yield from grid.buckets[i + grid.nx * j]
