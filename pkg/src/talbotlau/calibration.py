"""Wall-coefficient calibration.

The interaction strength C3 of a molecule/grating pair is not measured
directly; it is pinned by requiring the velocity-averaged quantum sine-fit
visibility to match a quoted theory value at one beam setting, and then
reused unchanged everywhere else, so the velocity dependence of the
contrast is a prediction rather than a fit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import InterferometerConfig, MoleculeSpecies
from .engine import VelocityDistribution, quantum_pattern_coefficients, velocity_average, visibility
from .errors import CalibrationInfeasibleError, DomainError


@dataclass(frozen=True)
class CalibrationResult:
    c3_mev_nm3: float
    achieved_visibility: float
    bracket: tuple[float, float]
    evaluations: int


def _averaged_visibility(
    species: MoleculeSpecies,
    config: InterferometerConfig,
    dist: VelocityDistribution,
    m_max: int,
    threads: int,
) -> float:
    cfg = replace(config, species=species)
    pattern = velocity_average(
        lambda v: quantum_pattern_coefficients(cfg, v, m_max=m_max), dist, threads=threads
    )
    return visibility(pattern, "sine-fit")


def calibrate_c3(
    species: MoleculeSpecies,
    config: InterferometerConfig,
    target_visibility: float,
    speed: float,
    dist: VelocityDistribution | None = None,
    c3_min: float = 0.0,
    c3_max: float = 100.0,
    scan_points: int = 21,
    tolerance: float = 0.002,
    m_max: int = 10,
    threads: int = 0,
) -> CalibrationResult:
    """Find the C3 (meV nm^3) reproducing a target velocity-averaged visibility.

    A coarse scan over [c3_min, c3_max] locates a bracketing interval first;
    bisection then drives the sine-fit visibility to the target within
    ``tolerance`` (absolute, default 0.2 percentage points).  Raises
    :class:`CalibrationInfeasibleError` with the attainable range when the
    target is never crossed.
    """
    if not 0.0 <= target_visibility:
        raise DomainError("target visibility must be nonnegative")
    if scan_points < 3:
        raise DomainError("scan needs at least 3 points")
    if dist is None:
        from .engine import delta_distribution

        dist = delta_distribution(speed)

    evaluations = 0

    def vis_at(c3: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return _averaged_visibility(
            replace(species, c3_mev_nm3=c3), config, dist, m_max, threads
        )

    grid = np.linspace(c3_min, c3_max, scan_points)
    values = [vis_at(c) for c in grid]

    # Exact-enough hit on a scan node short-circuits the search.
    for c, v in zip(grid, values):
        if abs(v - target_visibility) <= tolerance:
            return CalibrationResult(float(c), v, (float(c), float(c)), evaluations)

    bracket = None
    for i in range(len(grid) - 1):
        if (values[i] - target_visibility) * (values[i + 1] - target_visibility) < 0.0:
            bracket = (float(grid[i]), float(grid[i + 1]))
            break
    if bracket is None:
        raise CalibrationInfeasibleError(
            f"target visibility {target_visibility:.4f} outside attainable range "
            f"[{min(values):.4f}, {max(values):.4f}] for c3 in [{c3_min}, {c3_max}]",
            attainable_min=min(values),
            attainable_max=max(values),
        )

    lo, hi = bracket
    v_lo = vis_at(lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        v_mid = vis_at(mid)
        if abs(v_mid - target_visibility) <= tolerance:
            return CalibrationResult(mid, v_mid, (lo, hi), evaluations)
        if (v_lo - target_visibility) * (v_mid - target_visibility) < 0.0:
            hi = mid
        else:
            lo, v_lo = mid, v_mid
        if hi - lo < 1e-5 * max(1.0, hi):
            break
    mid = 0.5 * (lo + hi)
    return CalibrationResult(mid, vis_at(mid), (lo, hi), evaluations)
