"""Exception types shared across the package."""


class PairforceError(Exception):
    """Base class for all package errors."""


class DomainError(PairforceError, ValueError):
    """An input is outside the mathematical domain of an operation."""


class ConfigError(PairforceError, ValueError):
    """A configuration or parameter combination is invalid."""


class UnsupportedError(PairforceError, ValueError):
    """The requested evaluation is outside the supported regime."""


class DegenerateFrequencyError(ConfigError):
    """The two oscillator frequencies are too close for a formula that
    contains 1/(omega1^2 - omega2^2)."""


class PoleError(DomainError):
    """Direct evaluation exactly on a polarizability resonance."""


class NumericsError(PairforceError, RuntimeError):
    """Base class for numerical failures."""


class ConvergenceError(NumericsError):
    """A quadrature or extrapolation did not converge.

    Carries a ``diagnostics`` dict (rung values, spreads, panel counts).
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ResidueUnstableError(NumericsError):
    """The numerically estimated pole residue changed too much between
    stencil sizes."""


class IntegrandMismatchError(PairforceError, RuntimeError):
    """The derivative-ladder result does not match the stored target
    polynomial.  ``diff`` maps term keys to (expected, got) pairs."""

    def __init__(self, message, diff=None):
        super().__init__(message)
        self.diff = diff or {}


class ComponentError(PairforceError, RuntimeError):
    """A force component failed to evaluate; ``component`` names it."""

    def __init__(self, component, cause):
        super().__init__(f"component {component!r} failed: {cause}")
        self.component = component
        self.cause = cause


class BracketingError(NumericsError):
    """A root solve found no sign change in the search bracket."""


class MixedSignError(DomainError):
    """A log-log slope was requested across a sign change of the force."""


class TamperedTargetError(PairforceError):
    """Internal verification constant failed its own self-check."""
