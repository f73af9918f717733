"""Cone refinement for a single cell.

A stack of cones (pairs of unit directions) starts with the three cones of
an equilateral simplex around the site. For each cone both corner rays are
shot, the two endpoint lines are intersected in cone coordinates, and the
cone is either finished (same line, or a vertex found) or split by a new
direction that is guaranteed to hit a facet not yet seen in that cone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .endpoint import Endpoint, nearest_conflict, shoot_ray
from .errors import InconsistentCellError, InternalLogicError
from .geometry import EPS, ParallelLines, Point, Provenance, SameLine, Vec, direction_in_cone, solve_cone_system
from .grid import BucketGrid
from .world import World, contains

_S3 = math.sqrt(3.0) / 2.0
PSI = ((_S3, -0.5), (0.0, 1.0), (-_S3, -0.5))


@dataclass(frozen=True, slots=True)
class Subface:
    theta1: Vec
    theta2: Vec


@dataclass(frozen=True, slots=True)
class VertexRecord:
    coords: Point
    lines: FrozenSet[Provenance]
    cell: int


@dataclass(frozen=True)
class CellStats:
    rays: int
    r_k: int
    e_k: int
    subfaces: int
    cone_subfaces: Tuple[int, int, int]
    # splits where the prescribed direction was not strictly inside its cone
    fallback_splits: int = 0
    ray_comparisons: Tuple[int, ...] = field(default=(), compare=False, repr=False)

    def to_json(self) -> dict:
        return {"rays": self.rays, "r_k": self.r_k, "e_k": self.e_k, "subfaces": self.subfaces}


@dataclass(frozen=True)
class Cell:
    site: int
    vertices: Tuple[VertexRecord, ...]
    ccw_order: Tuple[int, ...]
    stats: CellStats = field(compare=False)

    @property
    def edges(self) -> FrozenSet[Provenance]:
        out = set()
        for v in self.vertices:
            out.update(v.lines)
        return frozenset(out)

    def polygon(self) -> List[Point]:
        return [self.vertices[i].coords for i in self.ccw_order]


def initial_simplex() -> Tuple[Vec, Vec, Vec, List[Subface]]:
    psi1, psi2, psi3 = PSI
    return psi1, psi2, psi3, [Subface(psi1, psi2), Subface(psi2, psi3), Subface(psi1, psi3)]


def point_in_cell(x: Point, k: int, sites: Sequence[Point], world: World, grid: BucketGrid,
                  tol: float = EPS) -> bool:
    """Closed-cell membership: inside the world and no site strictly nearer than site ``k``."""
    return contains(world, x, tol) and nearest_conflict(x, k, sites, grid, tol) is None


def sort_vertices_ccw(vertices: Sequence[VertexRecord], p: Point) -> Tuple[int, ...]:
    """Order vertex indices by polar angle around ``p`` and check edge adjacency."""
    order = sorted(range(len(vertices)),
                   key=lambda i: math.atan2(vertices[i].coords[1] - p[1], vertices[i].coords[0] - p[0]))
    m = len(order)
    if m >= 2:
        for pos in range(m):
            a = vertices[order[pos]]
            b = vertices[order[(pos + 1) % m]]
            if len(a.lines & b.lines) != 1:
                raise InconsistentCellError(
                    f"consecutive vertices {a.coords} and {b.coords} share lines {sorted(a.lines & b.lines)}",
                    a.cell)
    return tuple(order)


def _norm(x: float, y: float) -> Vec:
    r = math.hypot(x, y)
    return (x / r, y / r)


def build_cell(k: int, sites: Sequence[Point], world: World, grid: BucketGrid,
               tol: float = EPS, debug: bool = False) -> Cell:
    """Compute every vertex and edge of site ``k``'s cell.

    With ``debug`` set, also check that every split direction hits a facet
    other than the two already bounding its cone, and that no cone is
    processed twice.
    """
    p = sites[k]
    px, py = p
    eps = tol * world.scale
    memo: Dict[Vec, Endpoint] = {}
    comparisons: List[int] = []

    def endpoint(theta: Vec) -> Endpoint:
        # corner directions are handed from parent to child as the same tuple
        e = memo.get(theta)
        if e is None:
            e = shoot_ray(k, theta, sites, world, grid, tol)
            memo[theta] = e
            comparisons.append(e.comparisons)
        return e

    *_, faces = initial_simplex()
    stack = [(f.theta1, f.theta2, root) for root, f in enumerate(faces)][::-1]
    guard = 4 * len(sites) + 64
    processed = 0
    per_cone = [0, 0, 0]
    fallbacks = 0
    vertices: List[VertexRecord] = []
    by_key: Dict[Tuple[Provenance, ...], int] = {}
    seen = set()

    while stack:
        th1, th2, root = stack.pop()
        processed += 1
        per_cone[root] += 1
        if processed > guard:
            raise InternalLogicError(f"more than {guard} subfaces processed", k)
        if debug:
            key = frozenset(((round(th1[0], 12), round(th1[1], 12)), (round(th2[0], 12), round(th2[1], 12))))
            if key in seen:
                raise InternalLogicError(f"subface {th1}, {th2} processed twice", k)
            seen.add(key)

        e1 = endpoint(th1)
        e2 = endpoint(th2)
        L1 = e1.primary_line
        L2 = e2.primary_line
        T1 = (e1.t * th1[0], e1.t * th1[1])
        T2 = (e2.t * th2[0], e2.t * th2[1])
        sol = solve_cone_system(p, T1, T2, L1, L2, tol)

        if isinstance(sol, SameLine):
            continue
        if isinstance(sol, ParallelLines):
            phi = sol.phi
            inside, _ = direction_in_cone(th1, th2, phi, tol)
            th3 = phi if inside else (-phi[0], -phi[1])
        elif sol.lam1 >= -tol and sol.lam2 >= -tol:
            u = sol.u
            if point_in_cell(u, k, sites, world, grid, tol):
                _record(vertices, by_key, u, frozenset((L1.source, L2.source)), k, eps)
                continue
            th3 = _norm(u[0] - px, u[1] - py)
        else:
            u = sol.u
            th3 = _norm(px - u[0], py - u[1])

        _, (a1, a2) = direction_in_cone(th1, th2, th3, tol)
        if a1 <= tol or a2 <= tol:
            fallbacks += 1
            th3 = _norm(th1[0] + th2[0], th1[1] + th2[1])
        elif debug:
            s3 = endpoint(th3).primary_line.source
            if s3 == L1.source or s3 == L2.source:
                raise InternalLogicError(f"split ray {th3} hit facet {s3} already bounding its cone", k)
        stack.append((th2, th3, root))
        stack.append((th1, th3, root))

    order = sort_vertices_ccw(vertices, p)
    n_edges = len({s for v in vertices for s in v.lines})
    stats = CellStats(
        rays=len(memo),
        r_k=max(comparisons) if comparisons else 0,
        e_k=n_edges,
        subfaces=processed,
        cone_subfaces=tuple(per_cone),
        fallback_splits=fallbacks,
        ray_comparisons=tuple(comparisons),
    )
    return Cell(k, tuple(vertices), order, stats)


def _record(vertices: List[VertexRecord], by_key: dict, u: Point, lines: FrozenSet[Provenance],
            k: int, eps: float) -> None:
    key = tuple(sorted(lines))
    if key in by_key:
        return
    for idx, v in enumerate(vertices):
        if math.hypot(v.coords[0] - u[0], v.coords[1] - u[1]) < eps:
            vertices[idx] = VertexRecord(v.coords, v.lines | lines, k)
            by_key[key] = idx
            return
    by_key[key] = len(vertices)
    vertices.append(VertexRecord(u, lines, k))
