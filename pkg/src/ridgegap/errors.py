"""Exception and warning types raised across the package."""


class RidgeGapError(Exception):
    """Base class for errors raised by ridgegap."""


class SingularDirections(RidgeGapError):
    """The two directions are (numerically) linearly dependent."""


class DuplicatePoints(RidgeGapError):
    """A sampled domain was given the same point twice."""


class IndexOutOfRange(RidgeGapError, IndexError):
    """A path refers to a point index that does not exist."""


class InvalidPath(RidgeGapError, ValueError):
    """A point sequence violates the alternation conditions of a path."""


class NoCycle(RidgeGapError):
    """The alternation graph is acyclic, so the domain has no closed path."""


class MissingLevel(RidgeGapError, KeyError):
    """A ridge table has no entry for a level that a point lies on."""


class SolverStall(RidgeGapError):
    """The simplex solver hit its iteration cap."""


class CombinatorialBlowup(RidgeGapError):
    """Closed-path enumeration exceeded its cap.

    ``partial`` holds whatever was produced before the cap was reached.
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class DomainError(RidgeGapError, ArithmeticError):
    """An expression was evaluated outside its domain (log of 0, x/0, ...)."""

    def __init__(self, message, node=None, point=None):
        super().__init__(message)
        self.node = node
        self.point = point


class ExprSyntaxError(RidgeGapError, SyntaxError):
    """Malformed expression text.

    ``offset`` is the 0-based byte offset of the offending token and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = frozenset(expected)


class UnknownIdentifier(ExprSyntaxError):
    pass


class DimensionExceeded(ExprSyntaxError):
    pass


class MeanPeriodicActivation(RidgeGapError, ValueError):
    """The activation's shift span is not dense, so no network bound follows."""


class UnknownActivation(RidgeGapError, KeyError):
    pass


class EpsilonUnreachable(RidgeGapError):
    """The univariate fits did not reach the requested accuracy at the cap."""


class CurvatureViolated(UserWarning):
    """The corner formula was applied where the mixed partial changes sign."""


class IllConditioned(UserWarning):
    """Least-squares design matrix is rank deficient; minimax is used instead."""


class UnknownMeanPeriodicity(UserWarning):
    """The activation is not covered by a known non-mean-periodicity result."""
