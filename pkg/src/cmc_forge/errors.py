"""Exception hierarchy shared by every module.

Domain errors derive from :class:`DomainError` (a ``ValueError``); numerical
failures derive from :class:`ToleranceNotMet`. The CLI maps the first family to
exit code 1 and the second to exit code 2.
"""


class CMCError(Exception):
    """Base class for all package errors."""


class DomainError(CMCError, ValueError):
    """Input outside the domain of an operation."""


class DegenerateCurve(DomainError):
    pass


class BelowMinimumEnergy(DomainError):
    pass


class DegenerateLevel(DomainError):
    pass


class AxisCollision(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class BadGrid(DomainError):
    pass


class NoSignChange(DomainError):
    pass


class FormatMismatch(DomainError):
    pass


class ToleranceNotMet(CMCError, ArithmeticError):
    """A numerical routine could not reach the requested accuracy."""


class IoFailure(CMCError, OSError):
    pass
