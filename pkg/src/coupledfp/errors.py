"""Exception types raised by the solver modules."""


class CoupledFPError(Exception):
    """Base class for all library errors."""


class MetricError(CoupledFPError):
    """A user-supplied distance returned a negative or non-finite value."""


class DegenerateSample(CoupledFPError):
    """Every sampled comparable pair had zero distance."""


class SingularKernel(CoupledFPError):
    """A Green's kernel denominator 1 - exp(tau*T) vanishes."""


class PreconditionFailed(CoupledFPError):
    """A hypothesis required before solving does not hold.

    ``hypothesis`` names the failed check, e.g. ``"condition_3_9"``.
    """

    def __init__(self, hypothesis, message=""):
        self.hypothesis = hypothesis
        super().__init__(f"{hypothesis}: {message}" if message else hypothesis)


class NonFiniteIntegrand(CoupledFPError):
    """The integrand of the integral operator is NaN/inf at some node."""

    def __init__(self, node, t):
        self.node = node
        self.t = t
        super().__init__(f"non-finite integrand at node {node} (t={t!r})")


class InvalidConfig(CoupledFPError):
    """A run configuration file could not be parsed or validated."""
