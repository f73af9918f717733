"""Delaunay graph read straight off the stored cells."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Set, Tuple

from .geometry import BISECTOR, Provenance


@dataclass(frozen=True)
class DelaunayGraph:
    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def edges(self) -> List[Tuple[int, int]]:
        return [(k, j) for k, nbrs in enumerate(self.adjacency) for j in nbrs if k < j]

    def is_symmetric(self) -> bool:
        adj = [set(a) for a in self.adjacency]
        return all(k in adj[j] for k, a in enumerate(adj) for j in a)

    def has_self_loops(self) -> bool:
        return any(k in a for k, a in enumerate(self.adjacency))


def graph_from_edge_sets(edge_sets: Sequence[Iterable[Provenance]]) -> DelaunayGraph:
    """Connect ``k`` and ``j`` whenever either cell lists a bisector edge with the other."""
    n = len(edge_sets)
    adj: List[Set[int]] = [set() for _ in range(n)]
    for k, edges in enumerate(edge_sets):
        for src in edges:
            if src.kind == BISECTOR and src.id != k:
                adj[k].add(src.id)
                adj[src.id].add(k)
    return DelaunayGraph(n, tuple(tuple(sorted(a)) for a in adj))


def delaunay_graph(diagram) -> DelaunayGraph:
    """World-restricted Delaunay graph: sites whose cells share a 1-dimensional facet."""
    return graph_from_edge_sets([c.edges for c in diagram.cells])
