"""exactcomb: exact enumerative combinatorics.

Counting kernels for De Bruijn cycles, Euler tours (BEST theorem),
perfect matchings (FKT / Pfaffian orientations), Polya enumeration,
permutations of fixed shape, plane trees, and a handful of classical
finite checks (representative systems, linear spaces, integer bases,
abelian factorizations).  Every fast path has a brute-force twin.
"""

from .errors import ExactCombError

__version__ = "0.1.0"

__all__ = ["ExactCombError", "__version__"]
