"""Exception types shared across the package."""


class OperadError(Exception):
    """Base class for every error raised by this package."""


class InvalidPoset(OperadError, ValueError):
    pass


class IncomparableElements(OperadError, ValueError):
    pass


class NotForest(OperadError, ValueError):
    pass


class NotThinForest(OperadError, ValueError):
    pass


class NotStandardLabeling(OperadError, ValueError):
    pass


class NotAMorphism(OperadError, ValueError):
    pass


class IndexOutOfRange(OperadError, IndexError):
    pass


class NotAnOccurrence(OperadError, ValueError):
    pass


class ArityMismatch(OperadError, ValueError):
    pass


class BudgetExceeded(OperadError, RuntimeError):
    """Normalization ran out of steps; the system may not terminate."""


class NotTerminating(OperadError, RuntimeError):
    pass


class NotANormalForm(OperadError, ValueError):
    pass


class NotQAssociative(OperadError, ValueError):
    pass


class ParseError(OperadError, ValueError):
    pass
