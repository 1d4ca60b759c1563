from cm_bipartite.checker import OrderedMatching
from cm_bipartite.graph import BipartiteGraph


def graph(part_a, part_b, *edges):
    """Graph from 1-based ``(a, b)`` edges."""
    return BipartiteGraph.from_edges(part_a, part_b, [(a - 1, b - 1) for a, b in edges])


def matching(*pairs):
    """OrderedMatching from 1-based pairs."""
    return OrderedMatching([(a - 1, b - 1) for a, b in pairs])


def K2():
    return graph(1, 1, (1, 1))


def P4():
    return graph(2, 2, (1, 1), (2, 1), (2, 2))


def K22():
    return graph(2, 2, (1, 1), (1, 2), (2, 1), (2, 2))


def K33():
    return graph(3, 3, *((a, b) for a in range(1, 4) for b in range(1, 4)))


def no_perfect_matching_3x3():
    return graph(3, 3, (1, 1), (2, 1), (3, 1), (1, 2), (1, 3))


def condition1_violator():
    return graph(3, 3, (1, 1), (2, 2), (3, 3), (1, 2), (2, 3))


def disjoint_edges(n):
    return graph(n, n, *((i, i) for i in range(1, n + 1)))


P4_TEXT = "p bip 2 2 3\ne 1 1\ne 2 1\ne 2 2\n"
K22_TEXT = "p bip 2 2 4\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n"
