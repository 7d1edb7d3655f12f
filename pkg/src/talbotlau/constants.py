"""Physical constants and unit conversions.

All internal computation is SI.  Molecule masses are accepted in unified
atomic mass units and wall-interaction strengths in meV nm^3 (the units in
which surface-interaction coefficients are usually quoted); both are
converted exactly once, at the type boundary.

Constants are hard-coded at CODATA/SI-2019 precision and are not runtime
configurable, so results are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class PhysicalConstants:
    planck_constant: float = 6.62607015e-34  # J s (exact)
    boltzmann: float = 1.380649e-23          # J/K (exact)
    amu: float = 1.66053906660e-27           # kg
    local_gravity: float = 9.80665           # m/s^2 (standard gravity)
    reduced_planck: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("planck_constant", "boltzmann", "amu", "local_gravity"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be strictly positive")
        object.__setattr__(self, "reduced_planck", self.planck_constant / (2.0 * math.pi))


CONSTANTS = PhysicalConstants()

# 1 meV nm^3 in J m^3: 1e-3 * elementary charge * (1e-9 m)^3
_MEV_NM3 = 1.602176634e-19 * 1e-3 * 1e-27


def amu_to_kg(mass_amu: float) -> float:
    return mass_amu * CONSTANTS.amu


def kg_to_amu(mass_kg: float) -> float:
    return mass_kg / CONSTANTS.amu


def mev_nm3_to_si(c3: float) -> float:
    """Convert a -C3/r^3 interaction coefficient from meV nm^3 to J m^3."""
    return c3 * _MEV_NM3


def si_to_mev_nm3(c3_si: float) -> float:
    return c3_si / _MEV_NM3
