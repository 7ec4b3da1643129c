"""Exception hierarchy shared by all modules."""


class PhysentError(Exception):
    """Base class for every error raised by this package."""


class InvalidShape(PhysentError, ValueError):
    pass


class NotHermitian(PhysentError, ValueError):
    pass


class NotPSD(PhysentError, ValueError):
    pass


class PauliExclusion(PhysentError, ValueError):
    """Antisymmetrizing two identical single-particle states gives the null vector."""


class AssumptionViolated(PhysentError, ValueError):
    pass


class InvalidDetector(PhysentError, ValueError):
    pass


class InvalidParams(PhysentError, ValueError):
    pass


class NoCoincidences(PhysentError):
    """Coincidence weight is zero, so post-selection on coincident events is impossible."""

    def __init__(self, rate: float):
        super().__init__(f"no coincident events (rate {rate:.3e})")
        self.rate = rate


class ConsistencyError(PhysentError, ArithmeticError):
    """Internal numerical invariant broken; signals a bug, not bad input."""
