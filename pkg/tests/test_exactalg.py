import random
from fractions import Fraction
from itertools import permutations

import pytest

from exactcomb.errors import DimensionTooLarge, NotAPerfectSquare, UnboundVariable
from exactcomb.exactalg import (
    MultiPoly,
    det,
    integer_sqrt_exact,
    is_skew_symmetric,
    minor,
    permanent_ryser,
    poly_substitute,
)


def leibniz_det(m):
    """Sign-weighted permutation expansion; the independent oracle for det."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def leibniz_perm(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += prod
    return total


def test_det_small_cases():
    assert det([[2, -1], [-1, 2]]) == 3
    assert det([[1 if i == j else 0 for j in range(5)] for i in range(5)]) == 1
    assert det([]) == 1
    # Laplacian minor of the directed triangle: exactly one arborescence.
    lap = [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]
    assert det(minor(lap, 0)) == 1


def test_minor():
    assert minor([[7]], 0) == []
    assert minor([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1) == [[1, 0], [0, 1]]
    with pytest.raises(IndexError):
        minor([[1]], 1)


def test_det_vs_leibniz_randomized():
    rng = random.Random(12001)
    for _ in range(1000):
        n = rng.randint(1, 5)
        m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        assert det(m) == leibniz_det(m)


def test_permanent_small_cases():
    assert permanent_ryser([[1, 1, 1]] * 3) == 6
    assert permanent_ryser([[1 if i == j else 0 for j in range(4)] for i in range(4)]) == 1
    assert permanent_ryser([[1, 1], [1, 1]]) == 2  # bipartite adjacency of C4
    assert permanent_ryser([]) == 1


def test_permanent_vs_expansion_randomized():
    rng = random.Random(12002)
    for _ in range(1000):
        n = rng.randint(1, 6)
        m = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        assert permanent_ryser(m) == leibniz_perm(m)


def test_permanent_cap():
    with pytest.raises(DimensionTooLarge):
        permanent_ryser([[0] * 25 for _ in range(25)])
    assert permanent_ryser([[1, 2], [3, 4]], max_dim=2) == 10


def test_integer_sqrt_exact():
    assert integer_sqrt_exact(144) == 12
    assert integer_sqrt_exact(0) == 0
    assert integer_sqrt_exact(10**40) == 10**20
    with pytest.raises(NotAPerfectSquare):
        integer_sqrt_exact(145)
    with pytest.raises(NotAPerfectSquare):
        integer_sqrt_exact(-4)


def test_skew_symmetric_det_is_square():
    rng = random.Random(12003)
    for _ in range(300):
        n = rng.choice([2, 4, 6, 8])
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-3, 3)
                m[i][j] = v
                m[j][i] = -v
        assert is_skew_symmetric(m)
        d = det(m)
        assert d >= 0
        integer_sqrt_exact(d)  # must not raise: det of skew matrix is a square


def random_poly(rng, nvars=3, nterms=4):
    p = MultiPoly()
    for _ in range(nterms):
        exps = {f"v{i}": rng.randint(0, 2) for i in range(nvars)}
        p = p + MultiPoly.monomial(exps, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return p


def test_poly_basic_arithmetic():
    x = MultiPoly.variable("x")
    y = MultiPoly.variable("y")
    p = (x + y) ** 2
    assert p.coefficient({"x": 1, "y": 1}) == 2
    assert p.coefficient({"x": 2}) == 1
    assert (p - p) == MultiPoly()
    assert str(MultiPoly.constant(0)) == "0"
    assert (x * 0) == MultiPoly()


def test_poly_substitute_examples():
    x1 = MultiPoly.variable("x1")
    half_sq = Fraction(1, 2) * x1 * x1
    assert poly_substitute(half_sq, {"x1": MultiPoly.constant(2)}).constant_value() == 2
    with pytest.raises(UnboundVariable):
        poly_substitute(half_sq, {})


def test_poly_substitute_is_ring_hom():
    rng = random.Random(12004)
    for _ in range(60):
        p = random_poly(rng)
        q = random_poly(rng)
        bindings = {f"v{i}": random_poly(rng, nvars=2, nterms=2) for i in range(3)}
        sp = poly_substitute(p, bindings)
        sq = poly_substitute(q, bindings)
        assert poly_substitute(p + q, bindings) == sp + sq
        assert poly_substitute(p * q, bindings) == sp * sq


def test_poly_canonical_str_is_deterministic():
    p = MultiPoly.variable("x") * 3 + MultiPoly.variable("y") ** 2 - 1
    assert str(p) == str(MultiPoly(p.terms))
