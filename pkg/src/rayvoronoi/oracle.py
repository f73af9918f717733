"""Naive reference cells: clip the world polygon by every bisector half-plane.

Deliberately shares nothing with the ray-shooting code beyond the World and
plain coordinate arithmetic, so a disagreement points at one side or the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .errors import InternalLogicError
from .geometry import BISECTOR, BOUNDARY, Point, Provenance
from .world import World

# (point, provenance of the edge leaving that point)
_Vertex = Tuple[Point, Provenance]


@dataclass(frozen=True)
class OracleCell:
    site: int
    polygon: Tuple[Point, ...]
    # edge i runs from polygon[i] to polygon[i + 1]
    edge_sources: Tuple[Provenance, ...]

    @property
    def edges(self) -> FrozenSet[Provenance]:
        return frozenset(self.edge_sources)

    def vertex_lines(self, i: int) -> FrozenSet[Provenance]:
        return frozenset((self.edge_sources[i - 1], self.edge_sources[i]))


def _clip(poly: List[_Vertex], nx: float, ny: float, c: float, source: Provenance, eps: float) -> List[_Vertex]:
    """Keep the part of ``poly`` with ``nx*x + ny*y >= c`` (Sutherland-Hodgman, one plane)."""
    vals = [nx * q[0] + ny * q[1] - c for q, _ in poly]
    if min(vals) >= -eps:
        return poly
    out: List[_Vertex] = []
    m = len(poly)
    for i in range(m):
        s, src = poly[i]
        e = poly[(i + 1) % m][0]
        vs, ve = vals[i], vals[(i + 1) % m]
        s_in = vs >= -eps
        e_in = ve >= -eps
        if s_in:
            out.append((s, src))
            if not e_in and vs > eps:
                f = vs / (vs - ve)
                out.append(((s[0] + f * (e[0] - s[0]), s[1] + f * (e[1] - s[1])), source))
            elif not e_in:
                # s sits on the clip line: the new edge starts right here
                out[-1] = (s, source)
        elif e_in:
            if ve > eps:
                f = vs / (vs - ve)
                out.append(((s[0] + f * (e[0] - s[0]), s[1] + f * (e[1] - s[1])), src))
    return _tidy(out, eps)


def _tidy(poly: List[_Vertex], eps: float) -> List[_Vertex]:
    """Drop zero-length edges: of two coincident vertices keep the one whose outgoing edge survives."""
    changed = True
    while changed and len(poly) > 1:
        changed = False
        m = len(poly)
        for i in range(m):
            a = poly[i][0]
            b = poly[(i + 1) % m][0]
            if math.hypot(a[0] - b[0], a[1] - b[1]) <= eps or poly[i - 1][1] == poly[i][1]:
                del poly[i]
                changed = True
                break
    return poly


def naive_cell(k: int, sites: Sequence[Point], world: World, tol: float = 1e-9) -> OracleCell:
    """Cell of site ``k`` as the world clipped by all bisector half-planes toward ``p_k``."""
    eps = tol * world.scale
    px, py = sites[k]
    verts = list(world.vertices)
    poly: List[_Vertex] = [(v, Provenance(BOUNDARY, i)) for i, v in enumerate(verts)]
    others = sorted((math.hypot(sx - px, sy - py), j) for j, (sx, sy) in enumerate(sites) if j != k)
    for d, j in others:
        reach = max(math.hypot(q[0] - px, q[1] - py) for q, _ in poly)
        # the bisector sits at distance d/2 from p_k; beyond the farthest vertex it cannot cut
        if 0.5 * d > reach + eps:
            break
        ax, ay = sites[j]
        nx, ny = (px - ax) / d, (py - ay) / d
        c = nx * 0.5 * (px + ax) + ny * 0.5 * (py + ay)
        poly = _clip(poly, nx, ny, c, Provenance(BISECTOR, j), eps)
        if len(poly) < 3:
            raise InternalLogicError("naive clipping left fewer than 3 vertices", k)
    return OracleCell(k, tuple(q for q, _ in poly), tuple(s for _, s in poly))


@dataclass
class MatchReport:
    site: int
    missing_vertices: List[Point] = field(default_factory=list)
    extra_vertices: List[Point] = field(default_factory=list)
    missing_edges: List[Provenance] = field(default_factory=list)
    extra_edges: List[Provenance] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.missing_vertices or self.extra_vertices or self.missing_edges or self.extra_edges)

    def __str__(self) -> str:
        if self.passed:
            return f"cell {self.site}: match"
        parts = []
        for name in ("missing_vertices", "extra_vertices", "missing_edges", "extra_edges"):
            val = getattr(self, name)
            if val:
                parts.append(f"{name.replace('_', ' ')}: {val}")
        return f"cell {self.site}: " + "; ".join(parts)


def _nearest(q: Point, pts: Sequence[Point]) -> Tuple[Optional[int], float]:
    best, bd = None, math.inf
    for i, r in enumerate(pts):
        d = math.hypot(q[0] - r[0], q[1] - r[1])
        if d < bd:
            best, bd = i, d
    return best, bd


def compare(cell, oc: OracleCell, tol: float = 1e-7, scale: float = 1.0) -> MatchReport:
    """Vertex sets under mutual-nearest matching within ``tol * scale``, and edge-provenance sets."""
    lim = tol * scale
    mine = [v.coords for v in cell.vertices]
    ref = list(oc.polygon)
    rep = MatchReport(oc.site)
    matched_ref = set()
    for i, q in enumerate(mine):
        j, d = _nearest(q, ref)
        if j is not None and d <= lim and _nearest(ref[j], mine)[0] == i:
            matched_ref.add(j)
        else:
            rep.extra_vertices.append(q)
    rep.missing_vertices = [r for j, r in enumerate(ref) if j not in matched_ref]
    got = cell.edges
    want = oc.edges
    rep.missing_edges = sorted(want - got)
    rep.extra_edges = sorted(got - want)
    return rep
