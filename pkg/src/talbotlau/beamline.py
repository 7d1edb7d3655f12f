"""Effusive source spectrum and gravitational velocity selection.

Three horizontal slits restrict the beam to a family of free-flight
parabolas; since the gravitational sag over the flight path scales as
1/v^2, the slit geometry selects a velocity band.  The selected band is
moved by changing the vertical position of the source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CONSTANTS
from .core import MoleculeSpecies
from .engine import VelocityDistribution
from .errors import CoverageError, DomainError, NoBeamError


@dataclass(frozen=True)
class Slit:
    """One horizontal slit: longitudinal position from the oven, centre height, opening (m)."""

    position: float
    center: float
    opening: float


@dataclass(frozen=True)
class SlitSystem:
    """Ordered slits plus the tunable vertical source position.

    The first slit is the oven orifice itself: molecules are emitted across
    its opening (shifted by ``source_height_offset``) into a uniform angular
    window.
    """

    slits: tuple[Slit, ...]
    source_height_offset: float = 0.0

    def __post_init__(self) -> None:
        if len(self.slits) == 0:
            raise DomainError("slit system needs at least one slit")
        positions = [s.position for s in self.slits]
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise DomainError("slit positions must be strictly increasing")
        if any(s.opening <= 0.0 for s in self.slits):
            raise DomainError("slit openings must be positive")


@dataclass(frozen=True)
class SourceSpectrum:
    """Thermal source: temperature and species; effusive flux weighting."""

    temperature: float
    species: MoleculeSpecies
    form: str = "effusive-flux"

    def __post_init__(self) -> None:
        if self.temperature <= 0.0:
            raise DomainError(f"temperature must be > 0 K, got {self.temperature}")
        if self.form != "effusive-flux":
            raise DomainError(f"unknown source form {self.form!r}")


def most_probable_speed(src: SourceSpectrum) -> float:
    """Peak of the flux-weighted spectrum: sqrt(3 k_B T / m)."""
    return math.sqrt(3.0 * CONSTANTS.boltzmann * src.temperature / src.species.mass_kg)


def effusive_flux_spectrum(src: SourceSpectrum, grid: np.ndarray) -> VelocityDistribution:
    """Flux-weighted thermal spectrum, weights ~ v^3 exp(-m v^2 / 2 k_B T).

    A detector counting arriving molecules samples flux, hence the v^3
    rather than the v^2 density weighting.  The grid must span at least
    [0.2, 3] times the most probable speed, which keeps the truncated tail
    mass below 1e-3.
    """
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0.0):
        raise DomainError("speeds must be positive")
    vp = most_probable_speed(src)
    if grid[0] > 0.2 * vp or grid[-1] < 3.0 * vp:
        raise CoverageError(
            f"grid [{grid[0]:.1f}, {grid[-1]:.1f}] m/s must cover "
            f"[{0.2 * vp:.1f}, {3.0 * vp:.1f}] m/s; truncated tail mass would exceed 1e-3"
        )
    alpha2 = 2.0 * CONSTANTS.boltzmann * src.temperature / src.species.mass_kg
    weights = grid ** 3 * np.exp(-(grid ** 2) / alpha2)
    return VelocityDistribution.from_weights(grid, weights)


def parabola_transmission(
    slits: SlitSystem,
    speed: float,
    emission_samples: int = 20000,
    angle_window: float = 5e-4,
    gravity: float | None = None,
) -> float:
    """Fraction of emitted molecules of a given speed passing every slit.

    Deterministic stratified sampling of emission height (across the oven
    orifice) and emission angle (uniform in +-angle_window): each molecule
    follows y(z) = y0 + theta z - g z^2 / (2 v^2).  The angular window is
    chosen wide enough that the slits, not the window, limit the beam.
    """
    if speed <= 0.0:
        raise DomainError(f"speed must be > 0, got {speed}")
    if emission_samples < 1000:
        raise DomainError(f"emission_samples must be >= 1000, got {emission_samples}")
    if gravity is None:
        gravity = CONSTANTS.local_gravity
    first = slits.slits[0]
    n_y = max(8, int(round(math.sqrt(emission_samples / 2.0))))
    n_t = max(16, int(math.ceil(emission_samples / n_y)))
    y0 = (
        first.center
        + slits.source_height_offset
        + first.opening * ((np.arange(n_y) + 0.5) / n_y - 0.5)
    )
    theta = angle_window * (2.0 * (np.arange(n_t) + 0.5) / n_t - 1.0)
    yy, tt = np.meshgrid(y0, theta, indexing="ij")

    passed = np.ones_like(yy, dtype=bool)
    for slit in slits.slits[1:]:
        z = slit.position - first.position
        y = yy + tt * z - 0.5 * gravity * (z / speed) ** 2
        passed &= np.abs(y - slit.center) <= 0.5 * slit.opening
    return float(np.count_nonzero(passed)) / passed.size


def selected_distribution(
    src: SourceSpectrum,
    slits: SlitSystem,
    grid: np.ndarray,
    emission_samples: int = 20000,
    angle_window: float = 5e-4,
    gravity: float | None = None,
) -> VelocityDistribution:
    """Source spectrum filtered by the slit system, renormalized.

    Pointwise product of the effusive flux weights with the geometric
    transmission; raises :class:`NoBeamError` when the geometry blocks the
    whole grid.
    """
    effusive = effusive_flux_spectrum(src, grid)
    transmission = np.array(
        [
            parabola_transmission(slits, v, emission_samples, angle_window, gravity)
            for v in effusive.grid
        ]
    )
    weights = effusive.weights * transmission
    if not np.any(weights > 0.0):
        raise NoBeamError("slit geometry blocks every velocity on the grid")
    return VelocityDistribution.from_weights(effusive.grid, weights)
