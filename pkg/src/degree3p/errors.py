"""Exception hierarchy shared by every module.

The CLI maps `BadInput` subclasses to exit status 2 and `InvariantViolation`
subclasses to exit status 3.
"""


class Degree3pError(Exception):
    pass


class BadInput(Degree3pError, ValueError):
    """Caller supplied something outside an operation's precondition."""


class InvariantViolation(Degree3pError, RuntimeError):
    """An internal consistency check failed."""


# exact arithmetic
class MixedRadicands(BadInput):
    pass


class NotSquare(BadInput):
    pass


class IrreducibleCubicOrWorse(InvariantViolation):
    pass


# permutation groups
class DegreeMismatch(BadInput):
    pass


class CapExceeded(BadInput):
    pass


class NotTransitive(BadInput):
    pass


class NoElementOfOrderP(BadInput):
    pass


class PSquaredDividesOrder(BadInput):
    pass


# schemes
class InconsistentRepresentatives(InvariantViolation):
    pass


class NonCommutative(BadInput):
    pass


class NonIntegerMultiplicity(InvariantViolation):
    pass


class SubdegreeOne(BadInput):
    pass


class NotClosedUnderPairing(BadInput):
    pass


# feasibility
class BoundExceeded(BadInput):
    pass


class NonCommutativeCase(BadInput):
    pass


# fixtures
class DegreeTooSmall(BadInput):
    pass


class UnsupportedField(BadInput):
    pass


class NotASubgroup(BadInput):
    pass


class IndexTooLarge(BadInput):
    pass


class NotFound(BadInput):
    pass


class NotClosed(BadInput):
    pass
