"""The convex polygonal world that clips the diagram, plus input validation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Sequence, Tuple

from .errors import DegenerateInputError, PreconditionError
from .geometry import BOUNDARY, EPS, Line, Point, Provenance, Vec, make_line, point


@dataclass(frozen=True)
class World:
    """A compact convex polygon given by counter-clockwise vertices.

    Facet ``i`` runs from ``vertices[i]`` to ``vertices[i + 1]``; its line has
    provenance ``("boundary", i)`` and an inward-pointing normal.
    """

    vertices: Tuple[Point, ...]
    boundary_lines: Tuple[Line, ...] = field(repr=False)
    bbox: Tuple[float, float, float, float] = field(repr=False)

    @classmethod
    def from_vertices(cls, vertices: Sequence[Sequence[float]]) -> "World":
        """Build a world; clockwise input is reversed so facets are always ccw."""
        verts = [point(v[0], v[1]) for v in vertices]
        if len(verts) < 3:
            raise DegenerateInputError("world polygon needs at least 3 vertices")
        if signed_area(verts) < 0:
            verts.reverse()
        lines = []
        for i, (a, b) in enumerate(zip(verts, verts[1:] + verts[:1])):
            dx, dy = b[0] - a[0], b[1] - a[1]
            if dx == 0.0 and dy == 0.0:
                raise DegenerateInputError(f"world facet {i} has zero length")
            lines.append(make_line(-dy, dx, -dy * a[0] + dx * a[1], Provenance(BOUNDARY, i)))
        xs = [v[0] for v in verts]
        ys = [v[1] for v in verts]
        return cls(tuple(verts), tuple(lines), (min(xs), min(ys), max(xs), max(ys)))

    @classmethod
    def box(cls, xmin: float, ymin: float, xmax: float, ymax: float) -> "World":
        return cls.from_vertices([(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)])

    @property
    def scale(self) -> float:
        """Bounding-box diagonal; absolute tolerances are ``tol * scale``."""
        x0, y0, x1, y1 = self.bbox
        return math.hypot(x1 - x0, y1 - y0)

    @property
    def area(self) -> float:
        return signed_area(self.vertices)


def signed_area(verts: Sequence[Point]) -> float:
    s = 0.0
    n = len(verts)
    for i in range(n):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def contains(w: World, x: Point, tol: float = EPS) -> bool:
    eps = tol * w.scale
    return all(L.nx * x[0] + L.ny * x[1] >= L.c - eps for L in w.boundary_lines)


def boundary_margin(w: World, x: Point) -> float:
    """Smallest signed distance from ``x`` to a facet line (negative outside)."""
    return min(L.nx * x[0] + L.ny * x[1] - L.c for L in w.boundary_lines)


class Exit(NamedTuple):
    t: float
    point: Point
    line: Line


def ray_exit(w: World, p: Point, theta: Vec, tol: float = EPS) -> Exit:
    """Where the ray from interior point ``p`` leaves the world.

    At a polygon corner both facets are hit at the same ``t``; the lower facet
    id wins.
    """
    if boundary_margin(w, p) <= 0.0:
        raise PreconditionError(f"ray origin {p!r} is not interior to the world")
    px, py = p
    tx, ty = theta
    best_t = math.inf
    best = None
    eps = tol * w.scale
    for L in w.boundary_lines:
        denom = L.nx * tx + L.ny * ty
        if denom >= 0.0:
            continue
        t = (L.c - L.nx * px - L.ny * py) / denom
        if t < best_t - eps:
            best_t, best = t, L
        elif t < best_t:
            # corner tie within eps: keep the lower facet id, take the smaller t
            best_t = t
    if best is None:  # pragma: no cover - impossible for a bounded polygon
        raise PreconditionError("ray does not leave the world")
    return Exit(best_t, (px + best_t * tx, py + best_t * ty), best)


class Issue(NamedTuple):
    kind: str
    message: str
    sites: Tuple[int, ...] = ()


@dataclass
class ValidationReport:
    issues: List[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def kinds(self) -> set:
        return {i.kind for i in self.issues}

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(f"{i.kind}: {i.message}" for i in self.issues)


def validate(w: World, sites: Sequence[Point], tol: float = EPS) -> ValidationReport:
    """Collect every problem with the world and sites instead of stopping at the first."""
    report = ValidationReport()
    eps = tol * w.scale
    verts = w.vertices
    n = len(verts)
    if w.area <= 0.0:
        report.issues.append(Issue("degenerate-world", "world polygon has no area"))
    for i in range(n):
        a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        scale = math.hypot(b[0] - a[0], b[1] - a[1]) * math.hypot(c[0] - b[0], c[1] - b[1])
        if cross < 0.0:
            report.issues.append(Issue("non-convex-world", f"reflex turn at world vertex {i}"))
        elif cross <= tol * scale:
            report.issues.append(Issue("non-convex-world", f"collinear world vertex {i}"))
    if not sites:
        report.issues.append(Issue("no-sites", "at least one site is required"))
    for k, s in enumerate(sites):
        if not (math.isfinite(s[0]) and math.isfinite(s[1])):
            report.issues.append(Issue("non-finite-site", f"site {k} is not finite", (k,)))
            continue
        margin = boundary_margin(w, s)
        if margin < -eps:
            report.issues.append(Issue("site-outside-world", f"site {k} {s!r} lies outside the world", (k,)))
        elif margin <= eps:
            report.issues.append(Issue("site-on-boundary", f"site {k} {s!r} lies on the world boundary", (k,)))
    order = sorted(range(len(sites)), key=lambda k: sites[k])
    m = len(order)
    for pos, k in enumerate(order):
        for nxt in range(pos + 1, m):
            j = order[nxt]
            if sites[j][0] - sites[k][0] > eps:
                break
            if math.hypot(sites[j][0] - sites[k][0], sites[j][1] - sites[k][1]) <= eps:
                lo, hi = min(j, k), max(j, k)
                report.issues.append(Issue("duplicate-site", f"sites {lo} and {hi} coincide", (lo, hi)))
    return report


def default_world(sites: Sequence[Point], pad: float = 0.1) -> World:
    """Axis-aligned square around the sites, padded by ``pad`` of the extent on each side."""
    xs = [s[0] for s in sites]
    ys = [s[1] for s in sites]
    cx = 0.5 * (min(xs) + max(xs))
    cy = 0.5 * (min(ys) + max(ys))
    side = max(max(xs) - min(xs), max(ys) - min(ys))
    if side == 0.0:
        side = max(1.0, abs(cx), abs(cy))
    half = 0.5 * side * (1.0 + 2.0 * pad)
    return World.box(cx - half, cy - half, cx + half, cy + half)
