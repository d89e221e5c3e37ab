"""Exception hierarchy shared by every module."""


class RealfnError(Exception):
    """Base class for library errors."""


class ModeError(RealfnError, TypeError):
    """Exact and floating values were mixed in one operation."""


class InvalidInput(RealfnError, ValueError):
    """Input violates a documented precondition."""


class NumericalFailure(RealfnError, ArithmeticError):
    """A floating computation could not reach an unambiguous decision."""


class ConsistencyError(NumericalFailure):
    """Two independent routes to the same answer disagree.

    Raised when the divisor criterion and the constructive certificate
    disagree, or when a pseudoreal class shows up on a curve with real points.
    Either outcome contradicts the equivalence the library relies on, so it is
    always reported and never resolved silently.
    """


class InvalidConstellation(InvalidInput):
    pass


class NonIdentityProduct(InvalidConstellation):
    pass


class Intransitive(InvalidConstellation):
    pass
