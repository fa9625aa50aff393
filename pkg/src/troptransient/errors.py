"""Exception hierarchy shared by every module of the package."""


class TropError(Exception):
    """Base class for all errors raised by troptransient."""


class DimensionError(TropError, ValueError):
    pass


class InvalidScalar(TropError, ValueError):
    pass


class PositiveCycleError(TropError, ValueError):
    """The Kleene star diverges because some cycle has positive weight."""


class AcyclicError(TropError, ValueError):
    """The digraph has no cycle, so the max cycle mean is -inf."""


class IrreducibilityError(TropError, ValueError):
    pass


class SizeLimitError(TropError, ValueError):
    """An exhaustive search was requested on a graph that is too large."""


class HorizonError(TropError, RuntimeError):
    """An iteration ran past its horizon without certifying its result."""


class NoClosedWalkError(TropError, ValueError):
    pass


class DomainError(TropError, ValueError):
    pass


class DegenerateGapError(TropError, ValueError):
    """lambda(A) == lambda(B) with both finite; ratio bounds are undefined."""


class FactorizationError(TropError, ValueError):
    pass


class StructureError(TropError, RuntimeError):
    """An internal consistency check failed (indicates a bug, not bad input)."""


class InputError(TropError, ValueError):
    """A matrix file, subgraph description or campaign option could not be parsed."""
