"""Exception hierarchy.  Every error carries the data needed to explain it."""


class TreeFreeError(Exception):
    """Base class for all package errors."""


class MetricError(TreeFreeError, ValueError):
    """Input matrix does not define a finite metric space."""


class NotSquare(MetricError):
    pass


class NotSymmetric(MetricError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"d{self.pair} != d{self.pair[::-1]}")


class NegativeDistance(MetricError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"negative distance at {self.pair}")


class NonzeroDiagonal(MetricError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"d({index},{index}) is not zero")


class TriangleViolation(MetricError):
    """``d(i,k) > d(i,j) + d(j,k)`` for the witness ``(i, j, k)``."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        i, j, k = self.witness
        super().__init__(f"triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})")


class DuplicatePoints(MetricError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"points {self.pair[0]} and {self.pair[1]} are at distance 0")


class FourPointViolation(TreeFreeError, ValueError):
    """The metric is not a tree metric; ``verdict`` holds the witness."""

    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"four-point condition fails on {verdict.witness}, pair sums {verdict.sums}")


class NegativeAttachment(TreeFreeError, ArithmeticError):
    pass


class TreeError(TreeFreeError, ValueError):
    """Malformed weighted tree."""


class UnboundedObjective(TreeFreeError, ArithmeticError):
    pass


class UnsupportedPoint(TreeFreeError, KeyError):
    pass


class UnsortedInput(TreeFreeError, ValueError):
    pass


class NotALine(TreeFreeError, ValueError):
    pass


class EmptyPart(TreeFreeError, ValueError):
    pass


class CrossSeparationZero(TreeFreeError, ValueError):
    pass


class BoundViolated(TreeFreeError, AssertionError):
    pass
