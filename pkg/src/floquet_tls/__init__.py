"""Floquet toolkit for periodically driven two-level systems.

Computes periodic classical solutions on the Bloch sphere, Floquet states,
quasienergies with their geometric/dynamical split, resonance curves and
exact-rational Bloch-Siegert shift coefficients for the Rabi problems with
linear, elliptic and circular polarization, cross-validated by independent
computational routes (time-domain ODE, frequency-domain tridiagonal solve,
closed forms, asymptotic series).
"""

from . import (
    bloch_dynamics,
    cli,
    exact_models,
    fourier_rpl,
    quasienergy,
    resonance,
    series_limits,
    specfun,
)
from .errors import (
    BracketNotFoundError,
    ContinuityWarning,
    DegenerateMonodromyError,
    DomainError,
    FloquetTlsError,
    IntegrationError,
    ResonanceError,
    SeriesInstabilityError,
    SouthPoleError,
)

__all__ = [
    "bloch_dynamics",
    "cli",
    "exact_models",
    "fourier_rpl",
    "quasienergy",
    "resonance",
    "series_limits",
    "specfun",
    "BracketNotFoundError",
    "ContinuityWarning",
    "DegenerateMonodromyError",
    "DomainError",
    "FloquetTlsError",
    "IntegrationError",
    "ResonanceError",
    "SeriesInstabilityError",
    "SouthPoleError",
]

__version__ = "0.1.0"
