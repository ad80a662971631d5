"""Exception hierarchy shared across the workbench."""


class NoetherError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(NoetherError):
    pass


class NotAGroup(NoetherError):
    pass


class MixedGroups(NoetherError):
    pass


class TooLarge(NoetherError):
    pass


class ConductorMismatch(NoetherError):
    pass


class ZeroDenominator(NoetherError):
    pass


class DimMismatch(NoetherError):
    pass


class ModulusMismatch(NoetherError):
    pass


class NotMonomial(NoetherError):
    """A matrix has more than one nonzero entry in some column."""


NotMonomialMatrix = NotMonomial


class NotAnEigenvector(NoetherError):
    pass


class NotClosed(NoetherError):
    pass


class ClosureTooLarge(NoetherError):
    pass


class NotScalar(NoetherError):
    pass


class NonIntegralConjugate(NoetherError):
    pass


class ShapeViolation(NoetherError):
    pass


class DimUnsupported(NoetherError):
    pass


class ScriptRangeError(NoetherError):
    pass


class InvalidField(NoetherError):
    pass
