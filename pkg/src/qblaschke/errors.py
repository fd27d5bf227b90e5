"""Shared exception types.

Every domain failure raises a named subclass of :class:`QBlaschkeError` so the
CLI can map it to a machine-readable error object (exit code 2).  Plain
``ValueError``/``TypeError`` are reserved for malformed arguments (exit 1).
"""


class QBlaschkeError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__


class RealInput(QBlaschkeError):
    """A nonreal quaternion was required but a (near-)real one was given."""


class NearZeroInverse(QBlaschkeError):
    """Inversion of a quaternion with modulus below the underflow guard."""


class BadEpsilon(QBlaschkeError):
    """The supplied unit does not intertwine the reference quaternion."""


class NumericalError(QBlaschkeError):
    """An underlying dense solver or eigensolver failed to converge."""


class NotStable(QBlaschkeError):
    """Right spectrum is not strictly inside the open unit ball."""


class NotControllable(QBlaschkeError):
    """The controllability matrix of the pair is rank deficient."""


class IllConditioned(QBlaschkeError):
    """A matrix that must be inverted exceeds the condition-number guard."""


class NodeOutsideBall(QBlaschkeError):
    """A Blaschke node lies outside the closed unit ball."""


class PoleHit(QBlaschkeError):
    """A closed-form evaluation hit a non-invertible denominator."""


class DivergenceRisk(QBlaschkeError):
    """Tail data indicates the evaluation series does not converge."""


class TruncationInsufficient(QBlaschkeError):
    """The truncation order cannot meet the requested tolerance."""


class NoZeroInClass(QBlaschkeError):
    """The conjugacy class contains no verifiable zero of the input."""


class ChainExtractionFailed(QBlaschkeError):
    """Divisor extraction produced a point that is not a zero to tolerance."""


class SimilarInputs(QBlaschkeError):
    """Two inputs lie in the same conjugacy class where distinct ones are needed."""


class SimilarPointsUnsupported(QBlaschkeError):
    """The prescribed-zero recursion degenerates for similar points."""


class RankConditionFailed(QBlaschkeError):
    """The defect ranks do not satisfy the degenerate recovery condition."""


class NotPSD(QBlaschkeError):
    """A matrix that must be positive semidefinite has a negative eigenvalue."""


class NotSchur(QBlaschkeError):
    """The coefficient prefix fails the Toeplitz contractivity test."""


class NotSaturated(QBlaschkeError):
    """The defect rank profile is still climbing at the available order."""
