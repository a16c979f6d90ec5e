"""Perfect-matching (dimer) counting.

The fast path is the Kasteleyn / FKT method: under a Pfaffian
orientation eps the matrix a[i][j] = eps(i,j) * b[i][j] is antisymmetric
and det(a) is the square of the weighted matching sum.  A Pfaffian
orientation of a plane graph is built face by face (spanning tree plus
dual spanning tree), making every bounded face odd: an odd number of
boundary edges agree with the face's traversal direction.

Circuits of even length get a sign -prod(eps along the circuit), which
does not depend on starting point or direction; an orientation is
Pfaffian when every circuit in every even-circuit cover is positive.
A backtracking matcher is the oracle for everything here.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

from .errors import (
    DimensionTooLarge,
    Disconnected,
    InvalidEmbedding,
    OddCircuit,
    ShapeMismatch,
    TooLarge,
)
from .exactalg import det, integer_sqrt_exact, permanent_ryser

BRUTE_FORCE_NODE_CAP = 20
PFAFFIAN_CHECK_NODE_CAP = 14
POLYA_MATRIX_CAP = 20


class UndirectedGraph:
    """Simple graph with optional positive-free integer edge weights."""

    def __init__(self, n: int, edges: Sequence[tuple] = ()):
        assert n >= 0
        self.n = n
        self.edges: list[tuple] = []
        self.weights: dict[tuple, int] = {}
        self.adj: list[set] = [set() for _ in range(n)]
        for e in edges:
            self.add_edge(*e)

    def add_edge(self, u: int, v: int, weight: int = 1):
        assert 0 <= u < self.n and 0 <= v < self.n, "edge endpoint out of range"
        assert u != v, "loops not allowed"
        key = (min(u, v), max(u, v))
        assert key not in self.weights, f"parallel edge {key}"
        self.edges.append(key)
        self.weights[key] = weight
        self.adj[u].add(v)
        self.adj[v].add(u)

    def weight(self, u: int, v: int) -> int:
        return self.weights[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __repr__(self):
        return f"UndirectedGraph(n={self.n}, edges={self.edges})"


# ---------------------------------------------------------------------------
# Brute-force matching oracle.

def _matching_sum(g: UndirectedGraph, mask: int, memo: dict, weighted: bool) -> int:
    """Sum over perfect matchings of the induced subgraph on mask of the
    product of edge weights (1s when unweighted)."""
    if mask == 0:
        return 1
    cached = memo.get(mask)
    if cached is not None:
        return cached
    u = (mask & -mask).bit_length() - 1
    rest = mask & ~(1 << u)
    total = 0
    for v in g.adj[u]:
        bit = 1 << v
        if rest & bit:
            sub = _matching_sum(g, rest & ~bit, memo, weighted)
            total += g.weight(u, v) * sub if weighted else sub
    memo[mask] = total
    return total


def count_matchings_bruteforce(g: UndirectedGraph, node_cap: int = BRUTE_FORCE_NODE_CAP) -> int:
    """Number of perfect matchings by edge inclusion on the lowest
    unmatched node; 0 for odd node counts."""
    if g.n > node_cap:
        raise TooLarge(f"brute-force cap is {node_cap} nodes, got {g.n}")
    if g.n % 2:
        return 0
    return _matching_sum(g, (1 << g.n) - 1, {}, weighted=False)


def matching_weight_sum_bruteforce(g: UndirectedGraph,
                                   node_cap: int = BRUTE_FORCE_NODE_CAP) -> int:
    """Sum of products of edge weights over all perfect matchings."""
    if g.n > node_cap:
        raise TooLarge(f"brute-force cap is {node_cap} nodes, got {g.n}")
    if g.n % 2:
        return 0
    return _matching_sum(g, (1 << g.n) - 1, {}, weighted=True)


def enumerate_matchings(g: UndirectedGraph) -> Iterator[tuple]:
    """Yield perfect matchings as sorted edge tuples."""
    def extend(mask, acc):
        if mask == 0:
            yield tuple(acc)
            return
        u = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << u)
        for v in sorted(g.adj[u]):
            bit = 1 << v
            if rest & bit:
                acc.append((u, v))
                yield from extend(rest & ~bit, acc)
                acc.pop()

    if g.n % 2 == 0:
        yield from extend((1 << g.n) - 1, [])


def _has_perfect_matching(g: UndirectedGraph, mask: int, memo: dict) -> bool:
    if mask == 0:
        return True
    cached = memo.get(mask)
    if cached is not None:
        return cached
    u = (mask & -mask).bit_length() - 1
    rest = mask & ~(1 << u)
    ok = False
    for v in g.adj[u]:
        bit = 1 << v
        if rest & bit and _has_perfect_matching(g, rest & ~bit, memo):
            ok = True
            break
    memo[mask] = ok
    return ok


# ---------------------------------------------------------------------------
# Orientations and circuit signs.

class Orientation:
    """Antisymmetric +-1 signs on the edges of a graph: sign(i, j) = +1
    means the edge is oriented i -> j."""

    def __init__(self, g: UndirectedGraph, directed: dict | None = None):
        self.g = g
        # sign stored for the sorted endpoint pair
        self._sign: dict[tuple, int] = {}
        if directed is not None:
            for key, s in directed.items():
                assert s in (-1, 1)
                self._sign[key] = s
            assert set(self._sign) == set(g.weights), "orientation must cover all edges"

    @staticmethod
    def from_pairs(g: UndirectedGraph, pairs: Sequence[tuple]) -> "Orientation":
        """pairs lists each edge once as (tail, head)."""
        signs = {}
        for t, h in pairs:
            key = (min(t, h), max(t, h))
            assert key in g.weights, f"{(t, h)} is not an edge"
            assert key not in signs, f"edge {key} oriented twice"
            signs[key] = 1 if (t, h) == key else -1
        return Orientation(g, signs)

    def sign(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        s = self._sign[key]
        return s if (i, j) == key else -s

    def set_direction(self, tail: int, head: int):
        key = (min(tail, head), max(tail, head))
        self._sign[key] = 1 if (tail, head) == key else -1

    def flip(self, i: int, j: int):
        key = (min(i, j), max(i, j))
        self._sign[key] = -self._sign[key]

    def directed_pairs(self) -> list[tuple]:
        out = []
        for (u, v) in sorted(self._sign):
            out.append((u, v) if self._sign[(u, v)] == 1 else (v, u))
        return out

    def out_degree(self, v: int) -> int:
        return sum(1 for w in self.g.adj[v] if self.sign(v, w) == 1)


def circuit_sign(o: Orientation, circuit: Sequence[int]) -> int:
    """Sign of an even circuit, given as its node sequence: minus the
    product of the signs along one traversal.  Independent of rotation
    and direction; a length-2 circuit (one edge, used back and forth)
    is always +1."""
    k = len(circuit)
    if k % 2:
        raise OddCircuit(f"circuit length {k} is odd")
    prod = 1
    for idx in range(k):
        prod *= o.sign(circuit[idx], circuit[(idx + 1) % k])
    return -prod


def _even_cycles(g: UndirectedGraph) -> Iterator[list]:
    """Simple cycles of even length >= 4, each exactly once (least node
    first, direction fixed by second < last)."""
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend():
            v = path[-1]
            for w in sorted(g.adj[v]):
                if w == s and len(path) >= 4 and len(path) % 2 == 0 and path[1] < path[-1]:
                    yield list(path)
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from extend()
                    path.pop()
                    on_path.remove(w)

        yield from extend()


def is_pfaffian_orientation(g: UndirectedGraph, o: Orientation,
                            node_cap: int = PFAFFIAN_CHECK_NODE_CAP) -> bool:
    """Exhaustive check of the definition.

    A circuit belongs to some even-circuit cover exactly when the rest of
    the graph has a perfect matching (an even circuit splits into two
    matchings, so covering the complement with even circuits and matching
    it are the same thing).  Length-2 circuits are always positive, so
    only even cycles of length >= 4 with a matchable complement matter.
    """
    if g.n > node_cap:
        raise TooLarge(f"pfaffian check cap is {node_cap} nodes, got {g.n}")
    full = (1 << g.n) - 1
    memo: dict = {}
    for cycle in _even_cycles(g):
        if circuit_sign(o, cycle) == 1:
            continue
        mask = full
        for v in cycle:
            mask &= ~(1 << v)
        if _has_perfect_matching(g, mask, memo):
            return False
    return True


def even_circuit_covers(g: UndirectedGraph) -> Iterator[list]:
    """All covers of the node set by node-disjoint even circuits, as
    lists of node tuples (length-2 tuples are single edges).  Tiny-graph
    oracle used to cross-check is_pfaffian_orientation."""
    def cycles_through(u, mask):
        # even simple cycles within mask whose least node is u, plus edges
        for v in sorted(g.adj[u]):
            if mask & (1 << v):
                yield (u, v)
        path = [u]

        def extend():
            v = path[-1]
            for w in sorted(g.adj[v]):
                if w == u and len(path) >= 4 and len(path) % 2 == 0 and path[1] < path[-1]:
                    yield tuple(path)
                elif w > u and mask & (1 << w) and w not in path:
                    path.append(w)
                    yield from extend()
                    path.pop()

        yield from extend()

    def cover(mask, acc):
        if mask == 0:
            yield list(acc)
            return
        u = (mask & -mask).bit_length() - 1
        for circ in cycles_through(u, mask & ~(1 << u)):
            m = mask
            for v in circ:
                m &= ~(1 << v)
            acc.append(circ)
            yield from cover(m, acc)
            acc.pop()

    yield from cover((1 << g.n) - 1, [])


# ---------------------------------------------------------------------------
# Planar embeddings: rotation systems and traced faces.

class PlanarEmbedding:
    """Rotation system plus derived faces.

    rotations[v] lists the neighbors of v in cyclic order.  Faces are
    traced by the successor rule: after arriving at v from u, leave along
    the neighbor following u in rotations[v].  Every dart (directed edge)
    lies on exactly one face; the boundary direction the trace induces on
    bounded faces is what the parity checks below call clockwise.  For
    embeddings built from coordinates (see embedding_from_coords) the
    neighbor order is chosen so this really is geometric clockwise.

    Edges must form a single connected component (isolated nodes are
    allowed); one face is designated as the outer face.
    """

    def __init__(self, rotations: Sequence[Sequence[int]], outer_dart: tuple | None):
        self.rotations = [list(r) for r in rotations]
        n = len(self.rotations)
        darts = set()
        for u, rot in enumerate(self.rotations):
            if len(set(rot)) != len(rot):
                raise InvalidEmbedding(f"repeated neighbor at node {u}")
            for v in rot:
                if not 0 <= v < n or v == u:
                    raise InvalidEmbedding(f"bad neighbor {v} at node {u}")
                darts.add((u, v))
        for (u, v) in darts:
            if (v, u) not in darts:
                raise InvalidEmbedding(f"edge {{{u},{v}}} listed only at {u}")
        self._check_edge_connectivity(darts, n)
        self.faces = self._trace_faces(darts)
        self.face_of_dart = {}
        for idx, face in enumerate(self.faces):
            for dart in face:
                self.face_of_dart[dart] = idx
        if not darts:
            self.outer = 0
        else:
            if outer_dart is None or tuple(outer_dart) not in self.face_of_dart:
                raise InvalidEmbedding(f"outer dart {outer_dart} is not a dart")
            self.outer = self.face_of_dart[tuple(outer_dart)]
        self._check_euler_formula(darts, n)

    def _check_edge_connectivity(self, darts, n):
        used = sorted({u for u, _ in darts})
        if not used:
            return
        seen = {used[0]}
        stack = [used[0]]
        while stack:
            v = stack.pop()
            for w in self.rotations[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(used):
            raise InvalidEmbedding("edges must form one connected component")

    def _trace_faces(self, darts):
        if not darts:
            return [[]]
        index = {}
        for v, rot in enumerate(self.rotations):
            for i, u in enumerate(rot):
                index[(v, u)] = i
        faces = []
        unvisited = set(darts)
        for start in sorted(darts):
            if start not in unvisited:
                continue
            face = []
            dart = start
            while True:
                face.append(dart)
                unvisited.discard(dart)
                u, v = dart
                rot = self.rotations[v]
                dart = (v, rot[(index[(v, u)] + 1) % len(rot)])
                if dart == start:
                    break
                if dart not in unvisited:
                    raise InvalidEmbedding("face trace revisited a dart")
            faces.append(face)
        return faces

    def _check_euler_formula(self, darts, n):
        if not darts:
            return
        v = len({u for u, _ in darts})
        e = len(darts) // 2
        f = len(self.faces)
        if v - e + f != 2:
            raise InvalidEmbedding(
                f"Euler formula fails: {v} - {e} + {f} != 2 (not genus 0)")

    def bounded_faces(self) -> list:
        return [f for i, f in enumerate(self.faces) if i != self.outer and f]

    def matches_graph(self, g: UndirectedGraph) -> bool:
        return len(self.rotations) == g.n and all(
            set(rot) == g.adj[v] for v, rot in enumerate(self.rotations))


def embedding_from_coords(g: UndirectedGraph, coords: Sequence[tuple]) -> PlanarEmbedding:
    """Embedding of a plane straight-line drawing.

    Neighbors are sorted clockwise around each node, which makes traced
    face boundaries run clockwise on bounded faces; the outer face is the
    one traced counterclockwise (positive shoelace area).
    """
    rotations = []
    for v in range(g.n):
        x0, y0 = coords[v]
        nbrs = sorted(g.adj[v],
                      key=lambda w: -math.atan2(coords[w][1] - y0, coords[w][0] - x0))
        rotations.append(nbrs)
    emb = PlanarEmbedding(rotations, outer_dart=None) if not g.edges else \
        _embed_with_outer_by_area(rotations, coords)
    if not emb.matches_graph(g):
        raise InvalidEmbedding("rotations disagree with graph adjacency")
    return emb


def _embed_with_outer_by_area(rotations, coords) -> PlanarEmbedding:
    probe = PlanarEmbedding.__new__(PlanarEmbedding)
    probe.rotations = [list(r) for r in rotations]
    darts = {(u, v) for u, rot in enumerate(rotations) for v in rot}
    faces = probe._trace_faces(darts)

    def area(face):
        total = 0
        for (u, v) in face:
            total += coords[u][0] * coords[v][1] - coords[v][0] * coords[u][1]
        return total

    outer_face = max(faces, key=area)
    return PlanarEmbedding(rotations, outer_dart=outer_face[0])


def check_clockwise_odd(g: UndirectedGraph, emb: PlanarEmbedding, o: Orientation) -> bool:
    """True iff every bounded face has an odd number of boundary edges
    oriented along the face's traced (clockwise) direction."""
    if not emb.matches_graph(g):
        raise InvalidEmbedding("rotations disagree with graph adjacency")
    for face in emb.bounded_faces():
        along = sum(1 for (u, v) in face if o.sign(u, v) == 1)
        if along % 2 == 0:
            return False
    return True


def kasteleyn_orient(g: UndirectedGraph, emb: PlanarEmbedding) -> Orientation:
    """Clockwise-odd (hence Pfaffian) orientation of a connected plane graph.

    Orient a spanning tree arbitrarily.  The remaining edges correspond to
    the edges of a spanning tree of the dual graph rooted at the outer
    face; resolving them from the leaves toward the root fixes each
    bounded face's parity exactly once.
    """
    if not emb.matches_graph(g):
        raise InvalidEmbedding("rotations disagree with graph adjacency")
    if not g.is_connected():
        raise InvalidEmbedding("graph must be connected")
    o = Orientation(g, {key: 1 for key in g.weights})  # placeholder signs
    # spanning tree via BFS
    tree: set = set()
    if g.n:
        seen = {0}
        queue = [0]
        while queue:
            u = queue.pop(0)
            for w in sorted(g.adj[u]):
                if w not in seen:
                    seen.add(w)
                    tree.add((min(u, w), max(u, w)))
                    queue.append(w)
    # dual BFS from the outer face across non-tree edges
    parent_edge: dict[int, tuple] = {}
    depth = {emb.outer: 0}
    queue = [emb.outer]
    while queue:
        f = queue.pop(0)
        for dart in emb.faces[f]:
            u, v = dart
            key = (min(u, v), max(u, v))
            if key in tree:
                continue
            other = emb.face_of_dart[(v, u)]
            if other not in depth:
                depth[other] = depth[f] + 1
                parent_edge[other] = key
                queue.append(other)
    if len(depth) != len(emb.faces):
        raise InvalidEmbedding("dual graph not spanned; embedding inconsistent")
    # peel from deepest faces toward the outer face
    for f in sorted(parent_edge, key=lambda f: -depth[f]):
        key = parent_edge[f]
        along = 0
        parent_dart = None
        for (u, v) in emb.faces[f]:
            if (min(u, v), max(u, v)) == key:
                parent_dart = (u, v)
            elif o.sign(u, v) == 1:
                along += 1
        assert parent_dart is not None
        if along % 2 == 0:
            o.set_direction(*parent_dart)
        else:
            o.set_direction(parent_dart[1], parent_dart[0])
    assert check_clockwise_odd(g, emb, o)
    return o


def count_matchings_fkt(g: UndirectedGraph, o: Orientation) -> int:
    """Weighted matching sum via the orientation matrix determinant.

    Requires a Pfaffian orientation; if it is not one, the determinant is
    not a perfect square and NotAPerfectSquare escapes.  With unit weights
    this is the number of perfect matchings.
    """
    a = [[0] * g.n for _ in range(g.n)]
    for (u, v) in g.edges:
        w = g.weight(u, v)
        a[u][v] = o.sign(u, v) * w
        a[v][u] = o.sign(v, u) * w
    return integer_sqrt_exact(det(a))


def little_orientation(g: UndirectedGraph, v: int) -> Orientation:
    """Orientation in which every node except v has odd out-degree.

    Start anywhere; while some node u != v has even out-degree, flipping
    the edges of a u-v path changes the parity of u and v only.
    """
    if not g.is_connected():
        raise Disconnected("graph must be connected")
    assert 0 <= v < g.n
    o = Orientation(g, {key: 1 for key in g.weights})
    for u in range(g.n):
        if u == v or o.out_degree(u) % 2 == 1:
            continue
        # BFS path from u to v
        prev = {u: None}
        queue = [u]
        while queue and v not in prev:
            x = queue.pop(0)
            for w in sorted(g.adj[x]):
                if w not in prev:
                    prev[w] = x
                    queue.append(w)
        node = v
        while prev[node] is not None:
            o.flip(prev[node], node)
            node = prev[node]
    return o


def polya_matrix_check(a01: list, b: list, max_dim: int = POLYA_MATRIX_CAP) -> bool:
    """Is b a Polya matrix for the 0/1 matrix a01, i.e. a signing of its
    ones whose determinant equals the permanent of a01?"""
    n = len(a01)
    if n > max_dim:
        raise DimensionTooLarge(f"cap is {max_dim}, got {n}x{n}")
    if len(b) != n or any(len(r) != n for r in a01) or any(len(r) != n for r in b):
        raise ShapeMismatch("matrices must be square and of equal size")
    for i in range(n):
        for j in range(n):
            if a01[i][j] not in (0, 1):
                raise ShapeMismatch(f"entry ({i},{j}) of the base matrix is not 0/1")
            if a01[i][j] == 0 and b[i][j] != 0:
                raise ShapeMismatch(f"entry ({i},{j}) signed where base is 0")
            if a01[i][j] == 1 and b[i][j] not in (-1, 1):
                raise ShapeMismatch(f"entry ({i},{j}) is not a signing of 1")
    return permanent_ryser(a01) == det(b)


# ---------------------------------------------------------------------------
# Grid graphs, the standard worked example.

def grid_graph(rows: int, cols: int) -> tuple:
    """rows x cols grid with its straight-line embedding; node (r, c) is
    r*cols + c.  Returns (graph, embedding)."""
    assert rows >= 1 and cols >= 1
    g = UndirectedGraph(rows * cols)
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                g.add_edge(r * cols + c, r * cols + c + 1)
            if r + 1 < rows:
                g.add_edge(r * cols + c, (r + 1) * cols + c)
    coords = [(c, rows - 1 - r) for r in range(rows) for c in range(cols)]
    return g, embedding_from_coords(g, coords)
