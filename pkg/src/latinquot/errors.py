"""Exception types shared across the package."""


class LatinQuotError(Exception):
    """Base class for all library errors."""


class NonPrime(LatinQuotError, ValueError):
    pass


class DegreeOutOfRange(LatinQuotError, ValueError):
    pass


class BoundExceeded(LatinQuotError):
    """A configured size bound (field order, graph size, group size) was hit."""


class ZeroElement(LatinQuotError, ZeroDivisionError):
    pass


class IncompatibleSubfields(LatinQuotError, ValueError):
    pass


class ArgumentOutOfRange(LatinQuotError, ValueError):
    pass


class NotInStabilizer(LatinQuotError, ValueError):
    pass


class GoursatViolation(LatinQuotError, ValueError):
    """A coset condition of the requested stabilizer line does not hold."""


class NotTransitive(LatinQuotError, ValueError):
    """The group required to be transitive on nonzero vectors is not."""


class AsymmetricConnectionSet(LatinQuotError, ValueError):
    pass


class IdentityInS(LatinQuotError, ValueError):
    pass


class InvalidPartition(LatinQuotError, ValueError):
    pass


class NotAStabilizer(LatinQuotError, ValueError):
    pass


class NotLinear(LatinQuotError, ValueError):
    pass


class SpecLineMismatch(LatinQuotError, ValueError):
    pass


class EvenOrSmallQ(LatinQuotError, ValueError):
    pass
