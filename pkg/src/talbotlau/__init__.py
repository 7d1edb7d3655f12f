"""Talbot-Lau interferometer simulation and scan-reduction toolkit."""

from .beamline import (
    Slit,
    SlitSystem,
    SourceSpectrum,
    effusive_flux_spectrum,
    most_probable_speed,
    parabola_transmission,
    selected_distribution,
)
from .calibration import CalibrationResult, calibrate_c3
from .constants import CONSTANTS, PhysicalConstants
from .core import (
    GratingSpec,
    InterferometerConfig,
    MoleculeSpecies,
    de_broglie_wavelength,
    talbot_length,
)
from .engine import (
    FringePattern,
    VelocityDistribution,
    classical_shadow,
    delta_distribution,
    gaussian_distribution,
    length_over_talbot,
    quantum_pattern_coefficients,
    velocity_average,
    visibility,
)
from .fresnel import quantum_pattern_fresnel
from .gratings import (
    FourierCoefficients,
    TransmissionProfile,
    adsorption_margin,
    build_transmission,
    fourier_coefficients,
    wall_phase,
    wall_phase_gradient,
)
from .montecarlo import classical_pattern_mc, classical_pattern_quadrature

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "CalibrationResult",
    "FourierCoefficients",
    "FringePattern",
    "GratingSpec",
    "InterferometerConfig",
    "MoleculeSpecies",
    "PhysicalConstants",
    "Slit",
    "SlitSystem",
    "SourceSpectrum",
    "TransmissionProfile",
    "VelocityDistribution",
    "adsorption_margin",
    "build_transmission",
    "calibrate_c3",
    "classical_pattern_mc",
    "classical_pattern_quadrature",
    "classical_shadow",
    "de_broglie_wavelength",
    "delta_distribution",
    "effusive_flux_spectrum",
    "fourier_coefficients",
    "gaussian_distribution",
    "length_over_talbot",
    "most_probable_speed",
    "parabola_transmission",
    "quantum_pattern_coefficients",
    "quantum_pattern_fresnel",
    "selected_distribution",
    "talbot_length",
    "velocity_average",
    "visibility",
    "wall_phase",
    "wall_phase_gradient",
]
