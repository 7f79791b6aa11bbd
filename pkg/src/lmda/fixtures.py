"""Worked instances with known answers (vertex ``i`` of a drawing is id ``i - 1``)."""
from __future__ import annotations

from .graph import Graph, WeightedGraph

FIG1_EDGES = [
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
    (2, 7), (2, 8), (3, 9), (3, 10), (4, 11), (4, 12), (5, 13), (5, 14), (6, 15), (6, 16),
    (7, 17), (8, 18), (9, 19), (10, 20), (11, 21), (12, 22), (13, 23), (14, 24), (15, 25), (16, 26),
]
FIG1_S1 = frozenset(v - 1 for v in (7, 2, 9, 3, 11, 4, 13, 5, 15, 6))
FIG1_S2 = frozenset(v - 1 for v in (1, 2, 3))

# x1..x6 rooted at x1
FIG5_EDGES = [(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]
FIG5_WITNESSES = (frozenset({0, 2, 3}), frozenset({0, 2, 4}))

# K4 on a, b, c, d with the minimum maximal matching {ab, cd}
K4_MATCHING = [(0, 1), (2, 3)]


def fig1_tree() -> Graph:
    return Graph.from_edges(26, [(u - 1, v - 1) for u, v in FIG1_EDGES])


def fig5_tree() -> Graph:
    return Graph.from_edges(6, [(u - 1, v - 1) for u, v in FIG5_EDGES])


def single_edge_mmo() -> WeightedGraph:
    return WeightedGraph.from_edges(2, [(0, 1, 1)])
