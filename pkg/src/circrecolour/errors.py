"""Exception hierarchy shared by every module."""


class RecolourError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RecolourError):
    pass


class DisconnectedGraph(RecolourError):
    pass


class TreeEdge(RecolourError):
    pass


class BudgetExceeded(RecolourError):
    pass


class DomainMismatch(RecolourError):
    pass


class ColourOutOfRange(RecolourError):
    pass


class InvalidColouring(RecolourError):
    pass


class ParamOutOfRange(RecolourError):
    pass


class NotAPath(RecolourError):
    pass


class NotApplicable(RecolourError):
    """A cut relabelling violates the margin condition on ``edge``."""

    def __init__(self, edge, message=None):
        self.edge = edge
        super().__init__(message or f"cut relabelling not applicable at edge {edge}")


class P2Violation(RecolourError):
    """Some cycle of a labelling has weight not divisible by p."""

    def __init__(self, cycle, weight):
        self.cycle = cycle
        self.weight = weight
        super().__init__(f"cycle {cycle.vertices} has weight {weight}, not 0 mod p")


class DirectedCycleInX(RecolourError):
    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(f"directed cycle {cycle} in the tight digraph restricted to X")


class RIsZero(RecolourError):
    pass


class InvalidKSequence(RecolourError):
    pass


class InvalidPQSequence(RecolourError):
    pass


class NotProperOnGMinusE(RecolourError):
    pass
