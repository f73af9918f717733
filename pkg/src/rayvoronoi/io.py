"""Site files, site generation and the diagram JSON format."""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from .cell import Cell, CellStats, VertexRecord
from .delaunay import DelaunayGraph
from .errors import DegenerateInputError
from .geometry import EPS, Point, Provenance
from .world import World, boundary_margin, validate


def read_sites(path) -> List[Point]:
    """Parse ``x y`` pairs, one per line; ``#`` starts a comment."""
    sites = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.replace(",", " ").split()
        if len(parts) != 2:
            raise DegenerateInputError(f"{path}:{lineno}: expected 'x y', got {raw!r}")
        try:
            sites.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise DegenerateInputError(f"{path}:{lineno}: {exc}") from None
    return sites


def write_sites(path, sites: Sequence[Point]) -> None:
    Path(path).write_text("".join(f"{x!r} {y!r}\n" for x, y in sites), encoding="utf-8")


def parse_world(text: str) -> World:
    """``"x0 y0 x1 y1 ..."`` (counter-clockwise vertices) to a World."""
    try:
        vals = [float(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise DegenerateInputError(f"bad world spec {text!r}: {exc}") from None
    if len(vals) % 2 or len(vals) < 6:
        raise DegenerateInputError(f"world spec needs >= 3 x/y pairs, got {text!r}")
    return World.from_vertices(list(zip(vals[0::2], vals[1::2])))


def parse_generator(spec: str):
    parts = spec.split(":")
    if len(parts) != 3 or parts[0] != "uniform":
        raise DegenerateInputError(f"generator spec must look like 'uniform:N:SEED', got {spec!r}")
    try:
        n, seed = int(parts[1]), int(parts[2])
    except ValueError:
        raise DegenerateInputError(f"generator spec must look like 'uniform:N:SEED', got {spec!r}") from None
    if n < 1:
        raise DegenerateInputError("generator needs N >= 1")
    return n, seed


def generate_sites(spec: str, world: World, tol: float = EPS) -> List[Point]:
    """``uniform:N:SEED`` -> N distinct points drawn uniformly from the world interior."""
    n, seed = parse_generator(spec)
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = world.bbox
    eps = tol * world.scale
    sites: List[Point] = []
    while True:
        while len(sites) < n:
            batch = rng.uniform((x0, y0), (x1, y1), size=(max(16, 2 * (n - len(sites))), 2))
            for x, y in batch.tolist():
                if boundary_margin(world, (x, y)) > eps:
                    sites.append((x, y))
                    if len(sites) == n:
                        break
        dups = {iss.sites[1] for iss in validate(world, sites, tol).issues if iss.kind == "duplicate-site"}
        if not dups:
            return sites
        sites = [s for k, s in enumerate(sites) if k not in dups]


def _line_json(src: Provenance) -> dict:
    return {"kind": src.kind, "id": src.id}


def diagram_to_dict(diagram, graph: Optional[DelaunayGraph] = None) -> dict:
    out = {
        "world": {"vertices": [list(v) for v in diagram.world.vertices]},
        "sites": [list(s) for s in diagram.sites],
        "cells": [
            {
                "site": c.site,
                "vertices": [{"xy": list(v.coords), "lines": [_line_json(s) for s in sorted(v.lines)]}
                             for v in c.vertices],
                "ccw": list(c.ccw_order),
            }
            for c in diagram.cells
        ],
    }
    if graph is not None:
        out["delaunay"] = {"edges": [list(e) for e in graph.edges()]}
    out["stats"] = {"per_cell": [c.stats.to_json() for c in diagram.cells]}
    return out


def dumps(diagram, graph: Optional[DelaunayGraph] = None) -> str:
    return json.dumps(diagram_to_dict(diagram, graph), separators=(",", ":"))


def diagram_from_dict(data: dict):
    from .diagram import Diagram

    world = World.from_vertices(data["world"]["vertices"])
    sites = tuple((float(x), float(y)) for x, y in data["sites"])
    per_cell = data.get("stats", {}).get("per_cell") or [{}] * len(data["cells"])
    cells = []
    for c, st in zip(data["cells"], per_cell):
        k = c["site"]
        verts = tuple(
            VertexRecord(tuple(v["xy"]), frozenset(Provenance(s["kind"], s["id"]) for s in v["lines"]), k)
            for v in c["vertices"]
        )
        stats = CellStats(st.get("rays", 0), st.get("r_k", 0), st.get("e_k", 0), st.get("subfaces", 0), (0, 0, 0))
        cells.append(Cell(k, verts, tuple(c["ccw"]), stats))
    return Diagram(sites, world, tuple(cells))


def loads(text: str):
    return diagram_from_dict(json.loads(text))
