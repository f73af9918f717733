"""Deterministic SVG output: world outline, cell edges, sites, optional Delaunay edges."""

from __future__ import annotations

from pathlib import Path
from typing import List, Optional

from .delaunay import DelaunayGraph


def _f(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _pts(points) -> str:
    # y is negated so the picture is not upside down
    return " ".join(f"{_f(x)},{_f(-y)}" for x, y in points)


def svg_document(diagram, graph: Optional[DelaunayGraph] = None, width: int = 800) -> str:
    x0, y0, x1, y1 = diagram.world.bbox
    w, h = x1 - x0, y1 - y0
    pad = 0.02 * max(w, h)
    stroke = 0.002 * max(w, h)
    radius = 0.004 * max(w, h)
    vb = f"{_f(x0 - pad)} {_f(-y1 - pad)} {_f(w + 2 * pad)} {_f(h + 2 * pad)}"
    height = max(1, round(width * (h + 2 * pad) / (w + 2 * pad)))
    out: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="{vb}">',
        f'<g id="world" fill="none" stroke="black" stroke-width="{_f(2 * stroke)}">',
        f'<polygon points="{_pts(diagram.world.vertices)}"/>',
        "</g>",
        f'<g id="cells" fill="none" stroke="#4477aa" stroke-width="{_f(stroke)}">',
    ]
    for c in diagram.cells:
        out.append(f'<polygon data-site="{c.site}" points="{_pts(c.polygon())}"/>')
    out.append("</g>")
    if graph is not None:
        out.append(f'<g id="delaunay" stroke="#cc3311" stroke-width="{_f(2.5 * stroke)}">')
        for k, j in graph.edges():
            (ax, ay), (bx, by) = diagram.sites[k], diagram.sites[j]
            out.append(f'<line x1="{_f(ax)}" y1="{_f(-ay)}" x2="{_f(bx)}" y2="{_f(-by)}"/>')
        out.append("</g>")
    out.append('<g id="sites" fill="black">')
    for x, y in diagram.sites:
        out.append(f'<circle cx="{_f(x)}" cy="{_f(-y)}" r="{_f(radius)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(diagram, path, graph: Optional[DelaunayGraph] = None) -> Path:
    path = Path(path)
    path.write_text(svg_document(diagram, graph), encoding="utf-8")
    return path
