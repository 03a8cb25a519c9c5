"""Exception types shared across the package."""


class FfprogError(Exception):
    """Base class for all package errors."""


class NotPrime(FfprogError):
    """A value required to be prime is not."""


class TooLarge(FfprogError):
    """Field size exceeds the configured construction cap."""


class CapExceeded(FfprogError):
    """An enumeration exceeds the configured search cap."""


class ZeroElement(FfprogError):
    """The zero element was passed where a unit is required."""


class ZeroPolynomial(FfprogError):
    """The zero polynomial was passed where a nonzero one is required."""


class NotADivisor(FfprogError):
    """An integer divisibility precondition failed."""


class NotADivisorPoly(FfprogError):
    """A polynomial divisibility precondition failed."""


class NotNormal(FfprogError):
    """An element required to be normal (0-normal) is not."""


class BadPosition(FfprogError):
    """Progression position index out of range."""


class BadDegree(FfprogError):
    """Degree outside the supported range."""


class NonPositiveDelta(FfprogError):
    """Sieve retained-density margin is not positive."""


class HypothesisFailed(FfprogError):
    """A stated hypothesis of a bound does not hold for these inputs."""


class ReplicationMismatch(FfprogError):
    """A certified pipeline step diverged from its recorded target value."""
