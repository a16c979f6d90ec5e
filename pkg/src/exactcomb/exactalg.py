"""Exact scalar, matrix and polynomial kernels.

All counting modules sit on top of these primitives:

  * arbitrary-precision integers (Python ints) and rationals (Fraction),
  * fraction-free determinants (Bareiss elimination, no rounding ever),
  * exact integer square roots,
  * Ryser's O(2^n n) permanent with Gray-code updates,
  * sparse multivariate polynomials over the rationals.

Matrices are plain square lists of lists of ints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionTooLarge, NotAPerfectSquare, UnboundVariable

IntMatrix = list  # n x n nested lists of int

RYSER_DEFAULT_CAP = 24


def _check_square(m: IntMatrix) -> int:
    n = len(m)
    for row in m:
        assert len(row) == n, "matrix is not square"
    return n


def is_skew_symmetric(m: IntMatrix) -> bool:
    n = _check_square(m)
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(i, n))


def minor(m: IntMatrix, k: int) -> IntMatrix:
    """Drop row k and column k.  The 0x0 minor of a 1x1 matrix is legal."""
    n = _check_square(m)
    if not 0 <= k < n:
        raise IndexError(f"minor index {k} out of range for {n}x{n} matrix")
    return [[row[j] for j in range(n) if j != k] for i, row in enumerate(m) if i != k]


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Intermediate entries stay integral: every division below is exact by
    the Sylvester identity underlying Bareiss' scheme.  det([]) is 1 so
    that empty Laplacian minors count one spanning arborescence.
    """
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def integer_sqrt_exact(n: int) -> int:
    """Return s with s*s == n, or raise NotAPerfectSquare.

    A failure here, when n came from det of an orientation matrix, means
    the orientation was not Pfaffian.
    """
    if n < 0:
        raise NotAPerfectSquare(f"{n} is negative")
    s = math.isqrt(n)
    if s * s != n:
        raise NotAPerfectSquare(f"{n} is not a perfect square")
    return s


def permanent_ryser(m: IntMatrix, max_dim: int = RYSER_DEFAULT_CAP) -> int:
    """Exact permanent by Ryser's inclusion-exclusion over column subsets.

    Subsets are walked in Gray-code order so each step updates the n row
    sums with a single column add or subtract: O(2^n n) total.
    """
    n = _check_square(m)
    if n > max_dim:
        raise DimensionTooLarge(f"permanent cap is {max_dim}, got {n}x{n}")
    if n == 0:
        return 1
    row_sums = [0] * n
    total = 0
    subset = 0
    for g in range(1, 1 << n):
        gray = g ^ (g >> 1)
        j = (gray ^ subset).bit_length() - 1  # column that toggled
        if gray & (1 << j):
            for i in range(n):
                row_sums[i] += m[i][j]
        else:
            for i in range(n):
                row_sums[i] -= m[i][j]
        subset = gray
        prod = 1
        for s in row_sums:
            prod *= s
            if prod == 0:
                break
        if gray.bit_count() & 1:
            total -= prod
        else:
            total += prod
    if n & 1:
        total = -total
    return total


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials.
#
# A monomial is a tuple of (variable, exponent) pairs sorted by variable
# name, exponents > 0; the empty tuple is the constant monomial.

Monomial = tuple


def _normalize_monomial(exps: Mapping[str, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


class MultiPoly:
    """Sparse exact polynomial: {monomial: Fraction}, no zero terms stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[mono] = c

    @staticmethod
    def constant(c) -> "MultiPoly":
        return MultiPoly({(): Fraction(c)})

    @staticmethod
    def variable(name: str) -> "MultiPoly":
        return MultiPoly({((name, 1),): Fraction(1)})

    @staticmethod
    def monomial(exps: Mapping[str, int], coeff=1) -> "MultiPoly":
        return MultiPoly({_normalize_monomial(exps): Fraction(coeff)})

    def variables(self) -> frozenset:
        return frozenset(v for mono in self.terms for v, _ in mono)

    def coefficient(self, exps: Mapping[str, int]) -> Fraction:
        return self.terms.get(_normalize_monomial(exps), Fraction(0))

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def constant_value(self) -> Fraction:
        assert self.is_constant(), f"not a constant polynomial: {self}"
        return self.terms.get((), Fraction(0))

    def as_integer(self) -> int:
        value = self.constant_value()
        assert value.denominator == 1, f"not an integer: {value}"
        return value.numerator

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        return other is not NotImplemented and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        p = MultiPoly()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly()
        p.terms = {mono: -c for mono, c in self.terms.items()}
        return p

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "MultiPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mul_monomials(m1, m2)
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        p = MultiPoly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        assert k >= 0
        result = MultiPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def substitute(self, bindings: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        return poly_substitute(self, bindings)

    def sorted_terms(self):
        """Terms in canonical order: total degree descending, then monomial key."""
        def key(item):
            mono, _ = item
            return (-sum(e for _, e in mono), mono)
        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [f"{v}^{e}" if e > 1 else v for v, e in mono]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _coerce(value):
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.constant(value)
    return NotImplemented


def _mul_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict[str, int] = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def poly_substitute(p: MultiPoly, bindings: Mapping[str, MultiPoly]) -> MultiPoly:
    """Substitute a polynomial for every indeterminate of p and expand.

    Every variable occurring in p must be bound; binding values may be
    MultiPoly, int or Fraction.
    """
    missing = p.variables() - set(bindings)
    if missing:
        raise UnboundVariable(f"no binding for {sorted(missing)}")
    bound = {v: _coerce(b) for v, b in bindings.items()}
    result = MultiPoly()
    for mono, c in p.terms.items():
        term = MultiPoly.constant(c)
        for v, e in mono:
            term = term * bound[v] ** e
        result = result + term
    return result


def poly_sum(polys: Iterable[MultiPoly]) -> MultiPoly:
    total = MultiPoly()
    for p in polys:
        total = total + p
    return total
