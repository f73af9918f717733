"""Voronoi diagrams of point sites, one cell at a time, by ray shooting."""

from .cell import Cell, VertexRecord, build_cell, point_in_cell
from .delaunay import DelaunayGraph, delaunay_graph
from .diagram import BuildConfig, Diagram, build_diagram
from .errors import (
    DegenerateInputError,
    InternalLogicError,
    PreconditionError,
    RayVoronoiError,
    ValidationError,
)
from .grid import BucketGrid, build_index
from .world import World, validate

__all__ = [
    "BucketGrid", "BuildConfig", "Cell", "DegenerateInputError", "DelaunayGraph", "Diagram",
    "InternalLogicError", "PreconditionError", "RayVoronoiError", "ValidationError", "VertexRecord",
    "World", "build_cell", "build_diagram", "build_index", "delaunay_graph", "point_in_cell", "validate",
]
__version__ = "0.1.0"
