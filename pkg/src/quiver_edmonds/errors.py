"""Exception hierarchy shared by every module of the package."""


class QuiverEdmondsError(Exception):
    """Base class for all package errors."""


class CycleError(QuiverEdmondsError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("quiver has a directed cycle: " + " -> ".join(map(str, self.cycle)))


class DanglingIdError(QuiverEdmondsError):
    pass


class InvalidPathError(QuiverEdmondsError):
    pass


class ShapeError(QuiverEdmondsError):
    pass


class BoundAlgebraUnsupported(QuiverEdmondsError):
    pass


class SingularBaseChange(QuiverEdmondsError):
    pass


class WeightDimensionMismatch(QuiverEdmondsError):
    pass


class SizeCapExceeded(QuiverEdmondsError):
    pass


class DimensionMismatch(QuiverEdmondsError):
    pass


class RankCollapse(QuiverEdmondsError):
    """Raised by a scaling step when T(I) or T*(I) is numerically singular."""

    def __init__(self, side, ratio):
        self.side = side
        self.ratio = ratio
        super().__init__(f"rank collapse on {side}: min/max eigenvalue ratio {ratio:.3e}")


class InconsistencyAlarm(QuiverEdmondsError):
    """Decisions that must agree came out contradictory; this indicates a bug."""


class DisconnectedQuiverWarning(UserWarning):
    pass
