"""Floating-point primitives: lines, bisectors, ray/line hits and the 2x2 cone system.

Points and direction vectors are plain ``(x, y)`` tuples of floats. Lines are
stored as ``<N, x> = c`` with a unit normal ``N`` and carry a
:class:`Provenance` telling where they came from (a neighbouring site or a
facet of the world polygon).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple, Union

from .errors import DegenerateConeError, DegenerateInputError

Point = Tuple[float, float]
Vec = Tuple[float, float]

EPS = 1e-9

BISECTOR = "bisector"
BOUNDARY = "boundary"


class Provenance(NamedTuple):
    """Origin of a line: ``("bisector", j)`` or ``("boundary", facet_id)``."""

    kind: str
    id: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "id": self.id}


@dataclass(frozen=True, slots=True)
class Line:
    """The oriented line ``{x : nx*x + ny*y = c}`` with ``|(nx, ny)| = 1``.

    The normal points into the half-plane that is kept (the cell side for a
    bisector, the world interior for a boundary facet).
    """

    nx: float
    ny: float
    c: float
    source: Provenance

    @property
    def normal(self) -> Vec:
        return (self.nx, self.ny)

    @property
    def direction(self) -> Vec:
        return (-self.ny, self.nx)

    def value(self, x: Point) -> float:
        """Signed distance of ``x`` from the line, positive on the kept side."""
        return self.nx * x[0] + self.ny * x[1] - self.c


def unit(x: float, y: float) -> Vec:
    """Normalize ``(x, y)``; raise on zero or non-finite input."""
    r = math.hypot(x, y)
    if not (r > 0.0 and math.isfinite(r)):
        raise DegenerateInputError(f"cannot normalize vector ({x!r}, {y!r})")
    return (x / r, y / r)


def point(x: float, y: float) -> Point:
    x = float(x)
    y = float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DegenerateInputError(f"non-finite point ({x!r}, {y!r})")
    return (x, y)


def make_line(nx: float, ny: float, c: float, source: Provenance) -> Line:
    r = math.hypot(nx, ny)
    if not r > 0.0:
        raise DegenerateInputError("line normal has zero length")
    return Line(nx / r, ny / r, c / r, source)


def bisector(p: Point, a: Point, j: int = -1) -> Line:
    """Perpendicular bisector of ``p`` and site ``a`` (index ``j``), normal pointing to ``p``."""
    dx = p[0] - a[0]
    dy = p[1] - a[1]
    r = math.hypot(dx, dy)
    if r == 0.0:
        raise DegenerateInputError(f"bisector of coincident points {p!r}")
    nx = dx / r
    ny = dy / r
    c = nx * 0.5 * (p[0] + a[0]) + ny * 0.5 * (p[1] + a[1])
    return Line(nx, ny, c, Provenance(BISECTOR, j))


def ray_line_intersection(p: Point, theta: Vec, line: Line) -> Optional[Tuple[float, Point]]:
    """Smallest ``t >= 0`` with ``p + t*theta`` on ``line``, or None if parallel or behind."""
    denom = line.nx * theta[0] + line.ny * theta[1]
    if denom == 0.0:
        return None
    t = (line.c - line.nx * p[0] - line.ny * p[1]) / denom
    if t < 0.0:
        return None
    return t, (p[0] + t * theta[0], p[1] + t * theta[1])


def direction_in_cone(theta1: Vec, theta2: Vec, phi: Vec, tol: float = EPS) -> Tuple[bool, Tuple[float, float]]:
    """Write ``phi = a1*theta1 + a2*theta2`` and report whether both coefficients are >= -tol."""
    det = theta1[0] * theta2[1] - theta1[1] * theta2[0]
    if abs(det) <= tol:
        raise DegenerateConeError(f"cone generators {theta1!r}, {theta2!r} are parallel")
    a1 = (phi[0] * theta2[1] - phi[1] * theta2[0]) / det
    a2 = (theta1[0] * phi[1] - theta1[1] * phi[0]) / det
    return (a1 >= -tol and a2 >= -tol), (a1, a2)


@dataclass(frozen=True, slots=True)
class SameLine:
    pass


@dataclass(frozen=True, slots=True)
class ParallelLines:
    phi: Vec


@dataclass(frozen=True, slots=True)
class Unique:
    lam1: float
    lam2: float
    u: Point


ConeSolution = Union[SameLine, ParallelLines, Unique]


def lines_coincide(l1: Line, l2: Line, scale: float, tol: float = EPS) -> bool:
    if l1.source == l2.source:
        return True
    cross = l1.nx * l2.ny - l1.ny * l2.nx
    if abs(cross) > tol:
        return False
    dot = l1.nx * l2.nx + l1.ny * l2.ny
    off = l1.c - l2.c if dot > 0 else l1.c + l2.c
    return abs(off) <= tol * scale


def solve_cone_system(p: Point, T1: Vec, T2: Vec, L1: Line, L2: Line, tol: float = EPS) -> ConeSolution:
    """Locate ``L1 ∩ L2`` in the coordinates of the cone spanned by ``T1`` and ``T2``.

    ``T1``/``T2`` are the displacements from ``p`` to the two endpoints. The
    right-hand side uses the line offsets themselves, so a Unique solution lies
    on both lines up to rounding even when the endpoints sit on them only
    within tolerance.
    """
    n1 = math.hypot(T1[0], T1[1])
    n2 = math.hypot(T2[0], T2[1])
    if n1 == 0.0 or n2 == 0.0:
        raise DegenerateInputError("zero-length endpoint displacement")
    # parallelism is judged on the normals; det(B) = det(N) * det(T) would also
    # flag narrow cones as singular
    cross = L1.nx * L2.ny - L1.ny * L2.nx
    if abs(cross) <= tol or L1.source == L2.source:
        if lines_coincide(L1, L2, n1 + n2, tol):
            return SameLine()
        return ParallelLines(L1.direction)
    b11 = L1.nx * T1[0] + L1.ny * T1[1]
    b12 = L1.nx * T2[0] + L1.ny * T2[1]
    b21 = L2.nx * T1[0] + L2.ny * T1[1]
    b22 = L2.nx * T2[0] + L2.ny * T2[1]
    h1 = L1.c - L1.nx * p[0] - L1.ny * p[1]
    h2 = L2.c - L2.nx * p[0] - L2.ny * p[1]
    det = b11 * b22 - b12 * b21
    if det == 0.0:
        return ParallelLines(L1.direction)
    lam1 = (h1 * b22 - b12 * h2) / det
    lam2 = (b11 * h2 - h1 * b21) / det
    u = (p[0] + lam1 * T1[0] + lam2 * T2[0], p[1] + lam1 * T1[1] + lam2 * T2[1])
    return Unique(lam1, lam2, u)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])
