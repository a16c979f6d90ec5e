"""Euler tours in directed multigraphs.

The tour count comes from the BEST theorem: (number of spanning
arborescences toward any root) times prod_p (outdeg(p) - 1)!.  The
arborescence count is Kirchhoff's: a principal minor of the out-degree
Laplacian.  A backtracking enumerator provides the independent oracle.

Counting convention: a tour is a cyclic arc sequence; we anchor every
tour at a designated arc (the lexicographically first one), so rotations
are never counted twice.  Oracle, theorem and the tour constructor all
use the same anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidExitOrder, NotEulerian, TooLarge
from .exactalg import det, minor

ORACLE_ARC_CAP = 16


class DirectedMultigraph:
    """Arc-list digraph; parallel arcs and loops allowed.

    The position of an arc in the arc list is its identity.
    """

    def __init__(self, n: int, arcs: Sequence[tuple] = ()):
        assert n >= 0
        self.n = n
        self.arcs: list[tuple] = []
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.inn: list[list[int]] = [[] for _ in range(n)]
        for tail, head in arcs:
            self.add_arc(tail, head)

    def add_arc(self, tail: int, head: int) -> int:
        assert 0 <= tail < self.n and 0 <= head < self.n, "arc endpoint out of range"
        aid = len(self.arcs)
        self.arcs.append((tail, head))
        self.out[tail].append(aid)
        self.inn[head].append(aid)
        return aid

    def out_degree(self, v: int) -> int:
        return len(self.out[v])

    def in_degree(self, v: int) -> int:
        return len(self.inn[v])

    def __repr__(self):
        return f"DirectedMultigraph(n={self.n}, arcs={self.arcs})"


def is_eulerian(g: DirectedMultigraph) -> bool:
    """In-degree equals out-degree everywhere and all arcs are in one
    weakly connected component (isolated nodes carry no obligation)."""
    if any(g.in_degree(v) != g.out_degree(v) for v in range(g.n)):
        return False
    used = sorted({v for a in g.arcs for v in a})
    if not used:
        return True
    seen = {used[0]}
    stack = [used[0]]
    nbr: dict[int, set] = {v: set() for v in used}
    for t, h in g.arcs:
        nbr[t].add(h)
        nbr[h].add(t)
    while stack:
        v = stack.pop()
        for w in nbr[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(used)


def laplacian(g: DirectedMultigraph) -> list:
    """Out-degree Laplacian; loops cancel (they add to both the diagonal
    and the i->i count), so they are simply excluded."""
    m = [[0] * g.n for _ in range(g.n)]
    for t, h in g.arcs:
        if t == h:
            continue
        m[t][t] += 1
        m[t][h] -= 1
    return m


def count_arborescences(g: DirectedMultigraph, root: int) -> int:
    """Kirchhoff: spanning trees with every arc oriented toward root."""
    assert 0 <= root < g.n
    return det(minor(laplacian(g), root))


def arborescence_arcs_valid(g: DirectedMultigraph, root: int, choice: dict) -> bool:
    """True iff choice maps every non-root node to one of its out-arcs and
    following the chosen arcs always reaches the root (no cycles)."""
    if set(choice) != set(range(g.n)) - {root}:
        return False
    for v, aid in choice.items():
        if g.arcs[aid][0] != v:
            return False
    for v in choice:
        seen = set()
        while v != root:
            if v in seen:
                return False
            seen.add(v)
            v = g.arcs[choice[v]][1]
    return True


def enumerate_arborescences(g: DirectedMultigraph, root: int) -> list[dict]:
    """All arborescences toward root, by exhausting arc-choice functions.

    Exponential; used as the oracle for count_arborescences.
    """
    nodes = [v for v in range(g.n) if v != root]
    results: list[dict] = []

    def extend(i: int, choice: dict):
        if i == len(nodes):
            if arborescence_arcs_valid(g, root, choice):
                results.append(dict(choice))
            return
        v = nodes[i]
        for aid in g.out[v]:
            choice[v] = aid
            extend(i + 1, choice)
        choice.pop(v, None)

    extend(0, {})
    return results


def designated_arc(g: DirectedMultigraph) -> int:
    """The anchor arc: lexicographically first (tail, head), first index."""
    assert g.arcs, "graph has no arcs"
    return min(range(len(g.arcs)), key=lambda a: (g.arcs[a], a))


def support_subgraph(g: DirectedMultigraph) -> tuple:
    """Restrict to nodes that touch an arc.  Arc ids are preserved
    (same list order); returns (subgraph, old-to-new node map)."""
    used = sorted({v for a in g.arcs for v in a})
    remap = {v: i for i, v in enumerate(used)}
    h = DirectedMultigraph(len(used), [(remap[t], remap[h_]) for t, h_ in g.arcs])
    return h, remap


def count_euler_tours(g: DirectedMultigraph) -> int:
    """BEST theorem count of Euler tours (anchored; see module docstring)."""
    if not g.arcs:
        raise NotEulerian("graph has no arcs")
    if not is_eulerian(g):
        raise NotEulerian("in-degree != out-degree or arcs disconnected")
    h, _ = support_subgraph(g)
    root = h.arcs[designated_arc(h)][0]
    trees = count_arborescences(h, root)
    factor = 1
    for v in range(h.n):
        factor *= math.factorial(h.out_degree(v) - 1)
    return trees * factor


def backtrack_euler_tours(g: DirectedMultigraph, max_arcs: int = ORACLE_ARC_CAP) -> Iterator[tuple]:
    """Yield every Euler tour starting with the designated arc, as a tuple
    of arc ids.  Pure backtracking; the oracle for count_euler_tours."""
    if not g.arcs:
        raise NotEulerian("graph has no arcs")
    if len(g.arcs) > max_arcs:
        raise TooLarge(f"oracle cap is {max_arcs} arcs, got {len(g.arcs)}")
    if not is_eulerian(g):
        raise NotEulerian("in-degree != out-degree or arcs disconnected")
    start = designated_arc(g)
    used = [False] * len(g.arcs)
    used[start] = True
    tour = [start]
    m = len(g.arcs)

    def extend(v: int) -> Iterator[tuple]:
        if len(tour) == m:
            yield tuple(tour)
            return
        for aid in g.out[v]:
            if not used[aid]:
                used[aid] = True
                tour.append(aid)
                yield from extend(g.arcs[aid][1])
                tour.pop()
                used[aid] = False

    yield from extend(g.arcs[start][1])


def enumerate_euler_tours(g: DirectedMultigraph, max_arcs: int = ORACLE_ARC_CAP) -> int:
    return sum(1 for _ in backtrack_euler_tours(g, max_arcs))


@dataclass
class Arborescence:
    root: int
    choice: dict  # non-root node -> id of its unique outgoing tree arc

    def validate(self, g: DirectedMultigraph):
        assert arborescence_arcs_valid(g, self.root, self.choice), \
            "choice arcs do not form a spanning tree toward the root"


def tour_from_arborescence(g: DirectedMultigraph, tree: Arborescence,
                           exit_orders: dict) -> list[int]:
    """Build an Euler tour from a last-exit tree and per-node exit orders.

    exit_orders[v] lists all out-arcs of v; at every non-root node the
    tree arc must come last.  The walk starts with the root's last arc
    and otherwise always takes the first unused exit in the local order.
    That this closes into an Euler tour is the heart of the BEST theorem.
    """
    for v in range(g.n):
        order = exit_orders.get(v, [])
        if sorted(order) != sorted(g.out[v]):
            raise InvalidExitOrder(f"orders at node {v} are not its out-arcs")
        if v != tree.root and order and order[-1] != tree.choice[v]:
            raise InvalidExitOrder(f"tree arc not last at node {v}")
    if not g.out[tree.root]:
        raise InvalidExitOrder("root has no outgoing arc")
    used = [False] * len(g.arcs)
    start = exit_orders[tree.root][-1]
    used[start] = True
    tour = [start]
    v = g.arcs[start][1]
    while True:
        nxt = next((a for a in exit_orders[v] if not used[a]), None)
        if nxt is None:
            break
        used[nxt] = True
        tour.append(nxt)
        v = g.arcs[nxt][1]
    assert len(tour) == len(g.arcs) and v == tree.root, \
        "walk did not close into an Euler tour; invalid inputs"
    return tour


def is_euler_tour(g: DirectedMultigraph, tour: Sequence[int]) -> bool:
    """Closed, head-to-tail linked, and uses every arc exactly once."""
    if sorted(tour) != list(range(len(g.arcs))):
        return False
    for a, b in zip(tour, tour[1:]):
        if g.arcs[a][1] != g.arcs[b][0]:
            return False
    return g.arcs[tour[-1]][1] == g.arcs[tour[0]][0]
