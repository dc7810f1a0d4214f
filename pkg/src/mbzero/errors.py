"""Exception types shared across the library.

Every failure mode named in an operation contract gets its own class so
callers (and the CLI) can map them to distinct exit paths.
"""


class MbzeroError(Exception):
    """Base class for all library errors."""


class NonFiniteInput(MbzeroError):
    """An argument carried a NaN or infinity."""


class PoleProximity(MbzeroError):
    """Evaluation point too close to a pole of the target function."""


class BranchJump(MbzeroError):
    """A tracked-argument path step would move arg by >= pi."""


class LimitTooLarge(MbzeroError):
    """Requested table or sum limit exceeds the configured ceiling."""


class ArgumentDomain(MbzeroError):
    """Argument outside the operation's domain (e.g. x <= 0)."""


class QuadratureNonConvergence(MbzeroError):
    """Interval-halving failed to shrink the quadrature error estimate."""


class SeriesOverflow(MbzeroError):
    """Power-series mode requested outside its safe argument range."""


class ContourOnPole(MbzeroError):
    """Contour abscissa sits within the safety margin of a pole ladder."""


class TailBoundViolated(MbzeroError):
    """Contour truncation height too small for the requested tolerance."""


class PoleInStrip(MbzeroError):
    """A pole ladder crosses the strip between two contour abscissae."""

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class NotAZero(MbzeroError):
    """Residue extraction requested at a point that is not a zero."""


class DerivativeVanishes(MbzeroError):
    """Derivative at a claimed simple zero is numerically zero."""


class NoConvergence(MbzeroError):
    """Iteration (Newton, ladder extrapolation) failed to converge."""


class BasinEscape(MbzeroError):
    """Newton iterate left the trust interval around the initial guess."""


class MissedZeroSuspected(MbzeroError):
    """Scan count disagrees with the counting-formula prediction."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class IncompleteCatalog(MbzeroError):
    """Operation needs more catalog zeros than are available."""


class WindowTooSparse(MbzeroError):
    """Statistics window holds too few zeros for the estimator."""


class ChecksumMismatch(MbzeroError):
    """Catalog file failed its trailing-checksum verification."""


class VersionUnsupported(MbzeroError):
    """Catalog file declares a format version this build does not read."""


class SeriesDivergent(MbzeroError):
    """Series parameters outside the convergence disk."""


class StepUnderflow(MbzeroError):
    """Adaptive ODE step shrank below the hardware floor."""


class ConfigError(MbzeroError):
    """CLI configuration failed validation before any computation."""
