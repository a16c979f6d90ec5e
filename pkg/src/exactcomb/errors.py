"""Exception types shared across the package.

Everything derives from ExactCombError so callers (and the CLI) can map
any validation failure to a single error channel.
"""


class ExactCombError(Exception):
    """Base class for all input-validation errors in this package."""


class NotAPerfectSquare(ExactCombError):
    """integer_sqrt_exact got a value that is not a perfect square."""


class DimensionTooLarge(ExactCombError):
    """Matrix too large for an exponential-time kernel."""


class UnboundVariable(ExactCombError):
    """Polynomial substitution is missing a binding for some indeterminate."""


class NotEulerian(ExactCombError):
    """Euler-tour operation applied to a non-Eulerian digraph."""


class TooLarge(ExactCombError):
    """Instance exceeds the cap of a brute-force oracle."""


class InvalidExitOrder(ExactCombError):
    """Exit orders do not put the required arc last at each node."""


class OddCircuit(ExactCombError):
    """Circuit sign is only defined for circuits of even length."""


class InvalidEmbedding(ExactCombError):
    """Rotation system does not describe a planar embedding."""


class Disconnected(ExactCombError):
    """Operation requires a connected graph."""


class ShapeMismatch(ExactCombError):
    """Signed matrix is not a signing of the given 0/1 matrix."""


class DegreeMismatch(ExactCombError):
    """Permutations of different degrees cannot generate a group."""


class MalformedPartition(ExactCombError):
    """Blocks do not form a partition of the ground set."""


class NotLinearSpace(ExactCombError):
    """Some point pair is covered zero or more than one time."""


class AllCollinear(ExactCombError):
    """All points lie on a single line; no ordinary line exists."""


class ElementOutOfGroup(ExactCombError):
    """Subset contains a tuple that is not an element of the group."""


class GroupTooLarge(ExactCombError):
    """Group order exceeds the factorization search cap."""


class InvalidCode(ExactCombError):
    """String is not a valid UD or KE tree code."""


class FormatError(ExactCombError):
    """Malformed input file."""
