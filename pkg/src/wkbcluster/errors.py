"""Exception hierarchy shared by all modules.

Every error raised on purpose by the package derives from
:class:`WKBClusterError`, so callers (notably the command line front end)
can map families of failures onto exit codes.
"""


class WKBClusterError(Exception):
    """Base class for all package errors."""


# -- configuration / input shape -------------------------------------------

class ConfigError(WKBClusterError):
    """A job description or user input could not be interpreted."""


class LengthMismatch(WKBClusterError, ValueError):
    """Two vectors that must have equal length do not."""


class IndexOutOfRange(WKBClusterError, IndexError):
    """A direction / arc index is not in ``range(n)``."""


class VariableMismatch(WKBClusterError, ValueError):
    """Two rational functions live over different generator lists."""


class MalformedTriangulation(WKBClusterError, ValueError):
    """Triangle incidence data does not describe a triangulation."""


# -- exact algebra -----------------------------------------------------------

class DivisionByZero(WKBClusterError, ZeroDivisionError):
    """Exact division by the zero polynomial."""


class NonMonomialInput(WKBClusterError, ValueError):
    """A Laurent monomial was required."""


class SignIncoherent(WKBClusterError, ArithmeticError):
    """A tropical y-variable is neither a positive nor a negative vector."""


# -- combinatorics -----------------------------------------------------------

class InnerArcNotFlippable(WKBClusterError, ValueError):
    """The arc is the inner arc of a self-folded triangle."""


class NotSelfFolded(WKBClusterError, ValueError):
    """The puncture is not enclosed by a self-folded triangle."""


# -- mathematical verdicts ---------------------------------------------------

class VerdictError(WKBClusterError):
    """A mathematical check that should hold did not."""


class PeriodViolation(VerdictError):
    """A mutation sequence is not a period (or a lift does not close up)."""


class IdentityFailed(VerdictError):
    """A composite of Stokes automorphisms is not the identity."""


class AssumptionViolation(VerdictError):
    """A potential violates the standing assumptions on poles and zeros."""


# -- WKB / numerics ------------------------------------------------------------

class ZeroLeadingTerm(WKBClusterError, ValueError):
    """The principal term of a potential vanishes identically."""


class OddOrderPole(WKBClusterError, ValueError):
    """A residue was requested at a pole of odd order."""


class NumericalError(WKBClusterError):
    """Base class for failures of the numerical tracer."""


class NonSimpleZero(NumericalError):
    """A zero of the quadratic differential is not simple."""


class PoleOrderTooLow(NumericalError):
    """A pole of the quadratic differential has order one."""


class StepFailure(NumericalError):
    """The adaptive integrator could not make progress."""


class BranchAmbiguity(NumericalError):
    """The square-root branch could not be continued reliably."""


class TooManyEvents(NumericalError):
    """A theta window contains more saddle events than allowed."""


class FaceExtractionFailure(NumericalError):
    """The traced graph did not close up into consistent faces."""


class SaddlePresent(WKBClusterError):
    """The Stokes graph has a saddle trajectory (informational)."""

    def __init__(self, message, saddles=()):
        super().__init__(message)
        self.saddles = list(saddles)
