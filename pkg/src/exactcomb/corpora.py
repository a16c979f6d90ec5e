"""Seeded random instance generators used by the test suite.

Kept in the package (not the tests) so corpora can also be produced from
scripts with a chosen seed.
"""

from __future__ import annotations

import random

from .eulertours import DirectedMultigraph, is_eulerian


def random_eulerian_digraph(rng: random.Random, max_nodes: int = 5,
                            max_arcs: int = 10) -> DirectedMultigraph:
    """A connected Eulerian multigraph built as a union of closed walks.

    Loops and parallel arcs are allowed.  Closed walks keep in-degree
    equal to out-degree; resampling enforces connectivity of the arcs.
    """
    while True:
        n = rng.randint(1, max_nodes)
        arcs: list[tuple] = []
        while True:
            length = rng.randint(1, min(4, max_arcs - len(arcs)))
            walk = [rng.randrange(n) for _ in range(length)]
            arcs.extend((walk[i], walk[(i + 1) % length]) for i in range(length))
            if len(arcs) >= max_arcs or rng.random() < 0.4:
                break
        g = DirectedMultigraph(n, arcs)
        if g.arcs and is_eulerian(g):
            return g


def random_connected_graph(rng: random.Random, n: int, extra_edge_prob: float = 0.3):
    """Edge list of a connected simple graph on n nodes: a random spanning
    tree plus a sprinkling of extra edges."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a = order[i]
        b = order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < extra_edge_prob:
                edges.add((i, j))
    return sorted(edges)
