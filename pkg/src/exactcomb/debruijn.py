"""De Bruijn graphs and P_n cycles.

A P_n cycle over a k-letter alphabet is a cyclic word of length k^n in
which every length-n word occurs exactly once.  Such cycles are exactly
the Euler circuits of the graph whose nodes are the (n-1)-letter words
and whose arcs are the n-letter words (prefix -> suffix).  The binary
count 2^(2^(n-1) - n) is exposed in closed form; general alphabets go
through the eulertours module.

Words are encoded as integers in base k: a length-L word is its value,
most significant symbol first.  With that encoding, arc id a of the
order-n graph *is* the length-n word a, and the line-graph identity
L(G_n) = G_{n+1} becomes the identity relabeling.
"""

from __future__ import annotations

from typing import Sequence

from .errors import TooLarge
from .eulertours import DirectedMultigraph, backtrack_euler_tours

SIZE_CAP = 1 << 20  # max alphabet_size**n
ENUMERATION_MAX_N = 5

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class CyclicWord:
    """Nonempty symbol sequence read cyclically; equality up to rotation."""

    __slots__ = ("symbols",)

    def __init__(self, symbols: Sequence[int]):
        assert len(symbols) > 0, "cyclic word must be nonempty"
        self.symbols = tuple(symbols)

    @staticmethod
    def parse(text: str) -> "CyclicWord":
        return CyclicWord([_DIGITS.index(c) for c in text.lower()])

    def canonical(self) -> tuple:
        """Least rotation, the representative used for deduplication."""
        s = self.symbols
        return min(s[i:] + s[:i] for i in range(len(s)))

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __str__(self):
        return "".join(_DIGITS[s] for s in self.symbols)

    def __repr__(self):
        return f"CyclicWord({self})"


class DeBruijnGraph:
    """Order-n De Bruijn graph over a k-letter alphabet.

    graph.arcs[a] runs from node a // k (drop last symbol) to node
    a mod k^(n-1) (drop first symbol); node/arc indices are word values.
    """

    def __init__(self, alphabet_size: int, n: int, graph: DirectedMultigraph):
        self.alphabet_size = alphabet_size
        self.n = n
        self.graph = graph

    def node_word(self, v: int) -> tuple:
        return _decode(v, self.alphabet_size, self.n - 1)

    def arc_word(self, a: int) -> tuple:
        return _decode(a, self.alphabet_size, self.n)


def _decode(value: int, k: int, length: int) -> tuple:
    word = []
    for _ in range(length):
        word.append(value % k)
        value //= k
    return tuple(reversed(word))


def build_graph(alphabet_size: int, n: int, size_cap: int = SIZE_CAP) -> DeBruijnGraph:
    assert alphabet_size >= 2 and n >= 1
    if alphabet_size ** n > size_cap:
        raise TooLarge(f"{alphabet_size}^{n} words exceed cap {size_cap}")
    k = alphabet_size
    nodes = k ** (n - 1)
    g = DirectedMultigraph(nodes)
    for a in range(k ** n):
        g.add_arc(a // k, a % nodes)
    return DeBruijnGraph(alphabet_size, n, g)


def line_graph(g: DirectedMultigraph) -> DirectedMultigraph:
    """Directed line graph: one node per arc, one arc per head-to-tail
    incident pair (a loop of g yields a loop here)."""
    lg = DirectedMultigraph(len(g.arcs))
    for i, (_, head) in enumerate(g.arcs):
        for j in g.out[head]:
            lg.add_arc(i, j)
    return lg


def is_pn_cycle(w: CyclicWord, n: int, alphabet_size: int) -> bool:
    """True iff w has length alphabet_size^n and every length-n word
    occurs exactly once as a cyclic factor."""
    k = alphabet_size
    if len(w) != k ** n:
        return False
    s = w.symbols
    if any(not 0 <= c < k for c in s):
        return False
    seen = set()
    for i in range(len(s)):
        window = tuple(s[(i + j) % len(s)] for j in range(n))
        if window in seen:
            return False
        seen.add(window)
    return len(seen) == k ** n


def count_pn_cycles(n: int) -> int:
    """Binary P_n cycle count, 2^(2^(n-1) - n)."""
    assert n >= 1
    return 2 ** (2 ** (n - 1) - n)


def _tour_to_word(db: DeBruijnGraph, tour: Sequence[int]) -> CyclicWord:
    # first symbol of the length-n word a is its most significant digit
    top = db.alphabet_size ** (db.n - 1)
    return CyclicWord([a // top for a in tour])


def generate_pn_cycle(n: int, alphabet_size: int = 2,
                      size_cap: int = SIZE_CAP) -> CyclicWord:
    """One P_n cycle, from a Hierholzer Euler circuit of the graph.

    Deterministic: the walk always takes the smallest unused arc, so
    repeated calls give the same word.
    """
    db = build_graph(alphabet_size, n, size_cap)
    g = db.graph
    ptr = [0] * g.n
    stack: list[tuple] = [(0, None)]
    circuit: list[int] = []
    while stack:
        v, in_arc = stack[-1]
        if ptr[v] < len(g.out[v]):
            aid = g.out[v][ptr[v]]  # out lists are built in ascending order
            ptr[v] += 1
            stack.append((g.arcs[aid][1], aid))
        else:
            stack.pop()
            if in_arc is not None:
                circuit.append(in_arc)
    circuit.reverse()
    assert len(circuit) == len(g.arcs)
    return _tour_to_word(db, circuit)


def enumerate_pn_cycles(n: int) -> list[CyclicWord]:
    """All binary P_n cycles up to rotation, sorted canonically.

    Backtracks over anchored Euler tours of the graph; each cycle passes
    the anchor arc exactly once, so tours and cycles correspond 1:1.
    The oracle for count_pn_cycles.
    """
    if n > ENUMERATION_MAX_N:
        raise TooLarge(f"enumeration cap is n <= {ENUMERATION_MAX_N}")
    db = build_graph(2, n)
    words = {}
    for tour in backtrack_euler_tours(db.graph, max_arcs=2 ** n):
        w = _tour_to_word(db, tour)
        words[w.canonical()] = w
    return [words[c] for c in sorted(words)]
