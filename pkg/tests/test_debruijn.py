import time

import pytest

from exactcomb.debruijn import (
    CyclicWord,
    build_graph,
    count_pn_cycles,
    enumerate_pn_cycles,
    generate_pn_cycle,
    is_pn_cycle,
    line_graph,
)
from exactcomb.errors import TooLarge
from exactcomb.eulertours import DirectedMultigraph


def test_build_graph_shapes():
    db = build_graph(2, 1)
    assert db.graph.n == 1
    assert db.graph.arcs == [(0, 0), (0, 0)]

    db = build_graph(2, 3)
    assert db.graph.n == 4 and len(db.graph.arcs) == 8
    assert all(db.graph.out_degree(v) == 2 and db.graph.in_degree(v) == 2
               for v in range(4))

    db = build_graph(3, 2)
    assert db.graph.n == 3 and len(db.graph.arcs) == 9

    with pytest.raises(TooLarge):
        build_graph(2, 4, size_cap=8)


def test_arc_word_encoding():
    db = build_graph(2, 3)
    assert db.arc_word(0b011) == (0, 1, 1)
    tail, head = db.graph.arcs[0b011]
    assert db.node_word(tail) == (0, 1) and db.node_word(head) == (1, 1)


def test_line_graph_small():
    single = DirectedMultigraph(2, [(0, 1)])
    lg = line_graph(single)
    assert lg.n == 1 and lg.arcs == []

    two_cycle = DirectedMultigraph(2, [(0, 1), (1, 0)])
    lg = line_graph(two_cycle)
    assert lg.n == 2 and sorted(lg.arcs) == [(0, 1), (1, 0)]

    loop = DirectedMultigraph(1, [(0, 0)])
    assert line_graph(loop).arcs == [(0, 0)]


@pytest.mark.parametrize("n", [2, 3])
def test_line_graph_identity(n):
    # the word relabeling is the identity on indices: arc a of G_n is the
    # length-n word a, which is node a of G_{n+1}
    start = time.monotonic()
    lg = line_graph(build_graph(2, n).graph)
    succ = build_graph(2, n + 1).graph
    assert lg.n == succ.n
    assert sorted(lg.arcs) == sorted(succ.arcs)
    assert time.monotonic() - start < 1.0


def test_is_pn_cycle():
    assert is_pn_cycle(CyclicWord.parse("00010111"), 3, 2)
    assert is_pn_cycle(CyclicWord.parse("0011"), 2, 2)
    assert not is_pn_cycle(CyclicWord.parse("0101"), 2, 2)
    assert not is_pn_cycle(CyclicWord.parse("0011"), 3, 2)  # wrong length
    assert not is_pn_cycle(CyclicWord.parse("0021"), 2, 2)  # symbol out of range


def test_count_pn_cycles_values():
    assert [count_pn_cycles(n) for n in range(1, 6)] == [1, 1, 2, 16, 2048]


def test_count_recurrence():
    for n in range(1, 7):
        assert count_pn_cycles(n + 1) == 2 ** (2 ** (n - 1) - 1) * count_pn_cycles(n)


def test_generate_pn_cycle():
    assert str(generate_pn_cycle(1, 2)) == "01"
    assert is_pn_cycle(generate_pn_cycle(3, 2), 3, 2)
    w = generate_pn_cycle(2, 3)
    assert len(w) == 9 and is_pn_cycle(w, 2, 3)
    for n in range(1, 8):
        assert is_pn_cycle(generate_pn_cycle(n, 2), n, 2)
    # determinism
    assert generate_pn_cycle(4, 2).symbols == generate_pn_cycle(4, 2).symbols


def test_enumerate_small():
    assert [str(w) for w in enumerate_pn_cycles(2)] == ["0011"]
    cycles3 = enumerate_pn_cycles(3)
    assert len(cycles3) == 2
    assert CyclicWord.parse("00010111") in cycles3
    assert len(enumerate_pn_cycles(4)) == 16
    with pytest.raises(TooLarge):
        enumerate_pn_cycles(6)


def test_enumeration_matches_count():
    for n in range(1, 5):
        cycles = enumerate_pn_cycles(n)
        assert len(cycles) == count_pn_cycles(n)
        assert all(is_pn_cycle(w, n, 2) for w in cycles)
        canon = [w.canonical() for w in cycles]
        assert canon == sorted(canon)


@pytest.mark.slow
def test_enumeration_n5():
    start = time.monotonic()
    assert len(enumerate_pn_cycles(5)) == 2048
    assert time.monotonic() - start < 60


def test_cyclic_word_rotation_equality():
    assert CyclicWord.parse("0011") == CyclicWord.parse("1100")
    assert CyclicWord.parse("0011") != CyclicWord.parse("0101")
    assert CyclicWord.parse("110100").canonical() == (0, 0, 1, 1, 0, 1)
