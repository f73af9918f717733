"""Exact endpoint of a ray shot from a site: where it leaves the site's cell.

The ray starts at the world-boundary exit point ``y``. Whenever some site
``a`` is strictly closer to ``y`` than ``p`` is, ``y`` jumps back along the ray
to the bisector of ``p`` and ``a``. Buckets are visited in rings around
``p``'s bucket, and a bucket is skipped once it no longer meets the disk of
possible conflicts (centre ``y``, radius ``d(y, p)``). Those disks are nested
as ``y`` moves toward ``p``, so each site is distance-tested at most once per
ray and a skipped bucket never becomes relevant again.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import InternalLogicError, PreconditionError
from .geometry import BISECTOR, EPS, Line, Point, Vec, bisector, ray_line_intersection
from .grid import BucketGrid
from .world import World, boundary_margin, ray_exit


@dataclass(frozen=True, slots=True)
class Endpoint:
    t: float
    point: Point
    primary_line: Line
    # sites a with d(a, point) == d(p, point) up to tolerance, ascending
    equidist_sites: Tuple[int, ...]
    comparisons: int
    replacements: int


def _line_rank(line: Line, p: Point, sites: Sequence[Point]) -> tuple:
    if line.source.kind == BISECTOR:
        a = sites[line.source.id]
        return (0, math.hypot(a[0] - p[0], a[1] - p[1]), line.source.id)
    return (1, 0.0, line.source.id)


def select_primary_line(p: Point, y: Point, candidates: List[Line], sites: Sequence[Point]) -> Line:
    """Among lines through ``y``, pick one that carries an edge of the cell.

    Near ``y`` the cell is the cone cut out by the candidate half-planes; only
    the two candidates whose normals are angularly extreme (seen from the
    direction ``p - y``) bound it. For cocircular sites this matches ordering
    them by distance to ``p``. Between the two, bisectors beat boundary facets,
    then nearer sites, then lower ids.
    """
    if len(candidates) == 1:
        return candidates[0]
    wx = p[0] - y[0]
    wy = p[1] - y[1]
    lo = hi = None
    alo = math.inf
    ahi = -math.inf
    for L in candidates:
        ang = math.atan2(wx * L.ny - wy * L.nx, wx * L.nx + wy * L.ny)
        if ang < alo:
            alo, lo = ang, L
        if ang > ahi:
            ahi, hi = ang, L
    return min((lo, hi), key=lambda L: _line_rank(L, p, sites))


def shoot_ray(k: int, theta: Vec, sites: Sequence[Point], world: World, grid: BucketGrid,
              tol: float = EPS) -> Endpoint:
    """Endpoint of the ray from site ``k`` in unit direction ``theta``."""
    p = sites[k]
    if boundary_margin(world, p) <= 0.0:
        raise PreconditionError(f"site {k} is not interior to the world")
    px, py = p
    tx, ty = theta
    eps = tol * world.scale
    exit_ = ray_exit(world, p, theta, tol)
    t = exit_.t
    yx = px + t * tx
    yy = py + t * ty
    close = -1
    replacements = 0
    tested: List[int] = []
    entries = grid.entries
    gnx, gny = grid.nx, grid.ny
    x0, y0, wx, wy = grid.x0, grid.y0, grid.wx, grid.wy
    ci, cj = grid.bucket_of(px, py)
    wmin = min(wx, wy)
    cur = -1
    for r, di, dj in grid.walk_offsets():
        if r != cur:
            # the conflict disk lies inside the ball of radius 2t around p
            if r >= 2 and (r - 1) * wmin > 2.0 * (t + eps):
                break
            cur = r
        i = ci + di
        j = cj + dj
        if i < 0 or j < 0 or i >= gnx or j >= gny:
            continue
        lo = x0 + i * wx
        dx = lo - yx if yx < lo else (yx - lo - wx if yx > lo + wx else 0.0)
        lo = y0 + j * wy
        dy = lo - yy if yy < lo else (yy - lo - wy if yy > lo + wy else 0.0)
        rad = t + eps
        if dx * dx + dy * dy > rad * rad:
            continue
        for a, ax, ay in entries[i + gnx * j]:
            if a == k:
                continue
            tested.append(a)
            lim = t - eps
            ex = yx - ax
            ey = yy - ay
            if lim > 0.0 and ex * ex + ey * ey < lim * lim:
                dx = ax - px
                dy = ay - py
                t = (dx * dx + dy * dy) / (2.0 * (dx * tx + dy * ty))
                yx = px + t * tx
                yy = py + t * ty
                close = a
                replacements += 1
    if replacements > len(sites) - 1:  # pragma: no cover - each site moves y at most once
        raise InternalLogicError(f"ray {theta!r} moved {replacements} times", k)

    y = (yx, yy)
    lim = t + eps
    equidist = sorted(a for a in tested if math.hypot(yx - sites[a][0], yy - sites[a][1]) <= lim)
    candidates = [bisector(p, sites[a], a) for a in equidist]
    for L in world.boundary_lines:
        if abs(L.nx * yx + L.ny * yy - L.c) <= eps:
            candidates.append(L)
    # a line passing within eps of y at a grazing angle is crossed far from y;
    # only lines the ray actually crosses at y can bound the cell there
    hits = []
    for L in candidates:
        h = ray_line_intersection(p, theta, L)
        if h is not None and abs(h[0] - t) <= eps:
            hits.append(L)
    if not hits:
        hits.append(bisector(p, sites[close], close) if close >= 0 else exit_.line)
    line = select_primary_line(p, y, hits, sites)
    return Endpoint(t, y, line, tuple(equidist), len(tested), replacements)


def nearest_conflict(y: Point, k: int, sites: Sequence[Point], grid: BucketGrid,
                     tol: float = EPS) -> Optional[int]:
    """Some site strictly closer to ``y`` than site ``k`` (by more than tolerance), or None.

    Buckets are scanned in rings around ``y`` out to radius ``d(y, p_k)``.
    """
    px, py = sites[k]
    yx, yy = y
    radius = math.hypot(yx - px, yy - py)
    lim = radius - tol * grid.scale
    if lim <= 0.0:
        return None
    lim2 = lim * lim
    r2 = radius * radius
    entries = grid.entries
    gnx, gny = grid.nx, grid.ny
    x0, y0, wx, wy = grid.x0, grid.y0, grid.wx, grid.wy
    ci, cj = grid.bucket_of(yx, yy)
    wmin = min(wx, wy)
    cur = -1
    for r, di, dj in grid.walk_offsets():
        if r != cur:
            if r >= 2 and (r - 1) * wmin > radius:
                break
            cur = r
        i = ci + di
        j = cj + dj
        if i < 0 or j < 0 or i >= gnx or j >= gny:
            continue
        lo = x0 + i * wx
        dx = lo - yx if yx < lo else (yx - lo - wx if yx > lo + wx else 0.0)
        lo = y0 + j * wy
        dy = lo - yy if yy < lo else (yy - lo - wy if yy > lo + wy else 0.0)
        if dx * dx + dy * dy > r2:
            continue
        for a, ax, ay in entries[i + gnx * j]:
            if a != k:
                ex = yx - ax
                ey = yy - ay
                if ex * ex + ey * ey < lim2:
                    return a
    return None
