"""Core domain types and the two kinematic relations everything builds on.

The de Broglie wavelength lambda = h / (m v) and the self-imaging length
L_T = g^2 / lambda fix the geometry scale of the whole instrument; both are
pure functions of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constants import CONSTANTS, amu_to_kg, mev_nm3_to_si
from .errors import DomainError


@dataclass(frozen=True)
class MoleculeSpecies:
    """A molecule: name, mass in amu, wall-interaction strength in meV nm^3.

    ``c3 = 0`` models an ideal point particle that does not feel the grating
    walls at all.
    """

    name: str
    mass_amu: float
    c3_mev_nm3: float = 0.0

    def __post_init__(self) -> None:
        if self.mass_amu <= 0.0:
            raise DomainError(f"mass must be > 0 amu, got {self.mass_amu}")
        if self.c3_mev_nm3 < 0.0:
            raise DomainError(f"c3 must be >= 0, got {self.c3_mev_nm3}")

    @property
    def mass_kg(self) -> float:
        return amu_to_kg(self.mass_amu)

    @property
    def c3_si(self) -> float:
        """Wall coefficient in J m^3."""
        return mev_nm3_to_si(self.c3_mev_nm3)


@dataclass(frozen=True)
class GratingSpec:
    """Geometry of one grating: period, open fraction and bar thickness (m)."""

    period: float
    open_fraction: float
    thickness: float

    def __post_init__(self) -> None:
        if self.period <= 0.0:
            raise DomainError(f"period must be > 0, got {self.period}")
        if not 0.0 < self.open_fraction < 1.0:
            raise DomainError(
                f"open_fraction must lie in (0, 1), got {self.open_fraction}"
            )
        if self.thickness <= 0.0:
            raise DomainError(f"thickness must be > 0, got {self.thickness}")

    @property
    def slit_width(self) -> float:
        return self.open_fraction * self.period


@dataclass(frozen=True)
class InterferometerConfig:
    """Three gratings plus the two separations and the species flying through.

    The instrument this models uses three identical gratings and arms equal
    to within 100 um, so :meth:`symmetric` is the usual constructor.
    """

    gratings: tuple[GratingSpec, GratingSpec, GratingSpec]
    l1: float
    l2: float
    species: MoleculeSpecies

    def __post_init__(self) -> None:
        if len(self.gratings) != 3:
            raise DomainError("exactly three gratings required")
        if self.l1 <= 0.0 or self.l2 <= 0.0:
            raise DomainError(f"separations must be > 0, got l1={self.l1}, l2={self.l2}")

    @classmethod
    def symmetric(
        cls, grating: GratingSpec, length: float, species: MoleculeSpecies
    ) -> "InterferometerConfig":
        return cls((grating, grating, grating), length, length, species)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.l1 - self.l2) <= 1e-9 * max(self.l1, self.l2)


def de_broglie_wavelength(species: MoleculeSpecies, speed: float) -> float:
    """Matter-wave wavelength h/(m v) in metres.

    Strictly decreasing in both speed and mass.
    """
    if speed <= 0.0:
        raise DomainError(f"speed must be > 0, got {speed}")
    return CONSTANTS.planck_constant / (species.mass_kg * speed)


def talbot_length(period: float, wavelength: float) -> float:
    """Self-imaging length period^2 / wavelength in metres."""
    if period <= 0.0:
        raise DomainError(f"period must be > 0, got {period}")
    if wavelength <= 0.0:
        raise DomainError(f"wavelength must be > 0, got {wavelength}")
    return period * period / wavelength
