"""Matplotlib report figures written next to the CSV/JSON output."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import LineCollection, PolyCollection  # noqa: E402


def plot_diagram(diagram, path, graph=None, title: Optional[str] = None) -> Path:
    """Cells as thin outlines, sites as dots, Delaunay edges (if given) as thick lines."""
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.add_collection(PolyCollection([diagram.world.vertices], facecolors="none", edgecolors="black", linewidths=1.5))
    ax.add_collection(PolyCollection([c.polygon() for c in diagram.cells], facecolors="none",
                                     edgecolors="#4477aa", linewidths=0.5))
    if graph is not None:
        segs = [(diagram.sites[k], diagram.sites[j]) for k, j in graph.edges()]
        ax.add_collection(LineCollection(segs, colors="#cc3311", linewidths=1.2))
    xs, ys = zip(*diagram.sites)
    ax.plot(xs, ys, ".", color="black", markersize=max(1.0, 6.0 - len(xs) ** 0.25))
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.set_title(title or f"{len(diagram.sites)} sites")
    path = Path(path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_bench(rows: Sequence[dict], diagram, path) -> Path:
    """Three panels: build time per repetition, edges per cell, comparisons per ray."""
    fig, axes = plt.subplots(1, 3, figsize=(13, 3.8))
    axes[0].plot(range(1, len(rows) + 1), [r["build_ms"] for r in rows], "o-")
    axes[0].set_xlabel("repetition")
    axes[0].set_ylabel("build time (ms)")
    e = [s.e_k for s in diagram.stats]
    axes[1].hist(e, bins=range(min(e), max(e) + 2), align="left", rwidth=0.8)
    axes[1].set_xlabel("edges per cell")
    comps = [c for s in diagram.stats for c in s.ray_comparisons]
    axes[2].hist(comps, bins=40)
    axes[2].set_yscale("log")
    axes[2].set_xlabel("distance comparisons per ray")
    fig.suptitle(f"n = {len(diagram.sites)}, workers = {rows[0]['workers']}")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
