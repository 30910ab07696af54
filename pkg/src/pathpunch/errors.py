"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DetourError(Exception):
    """Base class for all errors raised by pathpunch."""


class DimensionMismatch(DetourError, ValueError):
    pass


class DegenerateInput(DetourError, ValueError):
    pass


class OutOfRange(DetourError, ValueError):
    pass


class OffBoundary(DetourError, ValueError):
    """A point that should lie on a ball boundary does not."""


class HypothesisViolated(DetourError):
    """The problem breaks an assumption the construction depends on.

    The CLI maps every subclass of this to exit code 2.
    """


class NotInterior(HypothesisViolated):
    """A point required to be interior to the domain is not."""


class EndpointOnObstacle(HypothesisViolated):
    pass


class PathOutsideDomain(HypothesisViolated):
    pass


class NoCrossing(DetourError):
    """A crossing search over a window came back empty."""


class OverlappingWindows(DetourError, ValueError):
    pass


class EndpointMismatch(DetourError, ValueError):
    pass


class ScheduleOverlap(DetourError):
    pass


class OracleContractViolation(DetourError):
    pass
