"""Exception types shared across the package."""


class FloquetTlsError(Exception):
    """Base class for all package errors."""


class DomainError(FloquetTlsError, ValueError):
    """Argument outside the supported domain of an operation."""


class IntegrationError(FloquetTlsError):
    """The ODE integrator failed (step-size underflow or similar)."""


class DegenerateMonodromyError(FloquetTlsError):
    """Monodromy has a non-simple eigenvalue 1; no unique periodic orbit."""


class SouthPoleError(FloquetTlsError):
    """Orbit touches the south pole where the section is undefined.

    Remedy: use the antipodal orbit -X(t) and map eps -> -eps mod omega.
    """


class ResonanceError(FloquetTlsError):
    """Leading minor vanishes; the unit-z0 Fourier solution does not exist."""


class BracketNotFoundError(FloquetTlsError):
    """Root bracketing failed; typically the truncation order is too small."""

    def __init__(self, message, suggested_n=None):
        super().__init__(message)
        self.suggested_n = suggested_n


class SeriesInstabilityError(FloquetTlsError):
    """Series coefficients did not stabilize under a truncation increase."""


class ContinuityWarning(UserWarning):
    """Branch continuation jump exceeded the safe threshold."""
