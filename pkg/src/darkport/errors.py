"""Exception types shared across the package."""


class DarkportError(Exception):
    """Base class for all package-specific errors."""


class CutoffError(DarkportError):
    """Fock-space cutoff search hit its hard limit.

    Carries the tail deficit that was actually achieved so callers can
    decide whether a looser tolerance would do.
    """

    def __init__(self, message, achieved_deficit):
        super().__init__(message)
        self.achieved_deficit = achieved_deficit


class InvalidCovarianceError(DarkportError):
    """Covariance matrix violates symmetry or the uncertainty relation."""


class EstimationError(DarkportError):
    """Likelihood is degenerate or a moment inversion failed."""
