"""Exception hierarchy shared by all rode modules."""


class RodeError(Exception):
    """Base class for all errors raised by rode."""


class DimensionMismatchError(RodeError):
    """Matrix/vector/operator shapes are incompatible."""


class NotSolvableError(RodeError):
    """Operator is not solvable for its highest derivatives.

    Raised when the leading coefficient matrix of a differential operator
    is singular as a rational matrix, so no monic normalization exists.
    """


class InvalidMultipliersError(RodeError):
    """A multiplier pair fails its defining normalization property."""


class MultiplierSearchError(InvalidMultipliersError):
    """The bounded heuristic search found no valid multiplier pair."""


class NonRationalPoleError(RodeError):
    """A singular point of the equation lies outside Q(i).

    The engine only expands about Gaussian-rational points; denominators
    with irreducible factors of degree >= 2 over Q(i) are out of scope.
    """


class ResidualError(RodeError):
    """Internal check failed: a reported solution does not satisfy its
    equation exactly. Indicates a bug, never expected user-facing."""
