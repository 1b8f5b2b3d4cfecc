"""Exception types shared across the package.

Validation problems (bad inputs, bad config) derive from ValueError so
callers can catch them broadly; numerical failures that arise mid-run
derive from NumericalError.
"""


class ConfigError(ValueError):
    """A scenario or parameter file failed validation.

    The message carries the dotted field path of the offending entry,
    e.g. ``true_cost.Q: not positive definite``.
    """


class DegenerateThrustError(ValueError):
    """Nonzero thrust requested with zero velocity (no thrust direction)."""


class InvalidMassError(ValueError):
    """Total spacecraft mass is zero or negative."""


class BelowSurfaceError(ValueError):
    """Requested altitude lies below the Earth's surface."""


class SingularityError(ValueError):
    """Evaluation at zero geocentric radius."""


class DegenerateOrbitError(ValueError):
    """Rectilinear state (zero angular momentum): orbital elements undefined."""


class NumericalError(RuntimeError):
    """Base class for failures of a numerical procedure."""


class IllPosedCostError(NumericalError):
    """The control-penalty Hessian R + B'SB is singular or not positive definite."""


class DivergenceError(NumericalError):
    """Gradient ascent diverged; carries the per-iteration trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace if trace is not None else []


class NormalizationError(NumericalError):
    """A cost surface is constant over the grid and cannot be normalized."""
