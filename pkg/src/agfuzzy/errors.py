"""Exception types shared across the package."""


class TableFormatError(ValueError):
    """A Cayley table (or its JSON encoding) is malformed."""


class CarrierMismatch(ValueError):
    """Operands live over different carriers."""


class EmptySubsetError(ValueError):
    """A non-empty subset was required."""


class GradeError(ValueError):
    """A grade or threshold is out of range or inexact."""


class HypothesisMismatch(ValueError):
    """A verification scope does not satisfy a statement's hypotheses."""


class BudgetExceeded(RuntimeError):
    """A search or verification ran out of budget before completing.

    Carries ``nodes`` (work units consumed) and ``progress`` (an opaque,
    deterministic snapshot of where the search stopped).
    """

    def __init__(self, message: str, nodes: int = 0, progress: object = None):
        super().__init__(message)
        self.nodes = nodes
        self.progress = progress
