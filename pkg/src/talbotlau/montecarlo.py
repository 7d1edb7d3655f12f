"""Classical trajectory model: ballistic flight plus an impulsive wall kick.

A molecule flies in straight lines between the gratings.  At each grating it
is absorbed if it hits a bar or the adsorption margin; crossing the open part
of the second grating deflects it by the impulse of the attractive wall
force accumulated over the transit time b/v,

    dv_x = (hbar / m) * d(phi)/dx,

the classical counterpart of the eikonal phase gradient (the two models stay
consistent under b -> b/2, C3 -> 2*C3 by construction).  The kick is applied
at the grating mid-plane; the bar depth is six orders of magnitude below the
arm length, so the thin-element approximation is exact at the precision of
everything else here.

The uncollimated incoherent beam makes the arrival position at the second
grating uniform modulo one period and independent of the source position,
which is sampled uniformly across the first grating; this is the same
equivalence the geometric shadow formula rests on.
"""

from __future__ import annotations

import numpy as np

from .constants import CONSTANTS
from .core import InterferometerConfig
from .engine import FringePattern, _harmonic_ratio
from .errors import DomainError
from .gratings import adsorption_margin, intensity_mask_coefficients, wall_phase_gradient


def _mask_occupancy(period: float, half_open: float, n_bins: int) -> np.ndarray:
    """Cell-averaged binary mask (slit centred at 0) on n_bins cells of a period."""
    delta = period / n_bins
    edges = -0.5 * period + delta * np.arange(n_bins + 1)
    lo = np.clip(edges[:-1], -half_open, half_open)
    hi = np.clip(edges[1:], -half_open, half_open)
    return np.maximum(hi - lo, 0.0) / delta


def classical_pattern_mc(
    config: InterferometerConfig,
    speed: float,
    trajectories: int,
    seed: int,
    bins: int = 256,
    m_max: int = 10,
    wall_margin: float | None = None,
) -> FringePattern:
    """Monte Carlo classical fringe pattern; bit-identical for a fixed seed.

    The detector signal is the count of survivors versus third-grating
    shift; per-bin Poisson errors are reported in the pattern metadata.
    Production runs should use >= 1e6 trajectories.
    """
    if trajectories < 1:
        raise DomainError(f"trajectories must be >= 1, got {trajectories}")
    if speed <= 0.0:
        raise DomainError(f"speed must be > 0, got {speed}")
    g1, g2, g3 = config.gratings
    species = config.species
    g = g2.period
    if wall_margin is None:
        wall_margin = adsorption_margin(species, g2, speed)
    h1 = 0.5 * g1.slit_width - wall_margin
    h2 = 0.5 * g2.slit_width - wall_margin
    h3 = 0.5 * g3.slit_width - wall_margin
    if min(h1, h2, h3) <= 0.0:
        raise DomainError("wall margin closes a grating")

    rng = np.random.default_rng(np.uint64(seed))
    x0 = rng.uniform(-0.5 * g, 0.5 * g, size=trajectories)
    x2 = rng.uniform(-0.5 * g, 0.5 * g, size=trajectories)
    alive = (np.abs(x0) < h1) & (np.abs(x2) < h2)

    x0 = x0[alive]
    x2 = x2[alive]
    if species.c3_si > 0.0:
        xi = x2 + 0.5 * g2.slit_width
        kick = (CONSTANTS.reduced_planck / species.mass_kg) * wall_phase_gradient(
            species, g2, speed, xi
        )
    else:
        kick = 0.0
    x3 = x2 + (x2 - x0) * (config.l2 / config.l1) + config.l2 * kick / speed
    folded = np.mod(x3 + 0.5 * g, g) - 0.5 * g

    counts, _ = np.histogram(folded, bins=bins, range=(-0.5 * g, 0.5 * g))
    t3 = _mask_occupancy(g, h3, bins)
    corr = np.fft.ifft(np.fft.fft(counts.astype(float)) * np.conj(np.fft.fft(t3))).real
    signal = corr / trajectories

    spectrum = np.fft.fft(signal) / bins
    orders = np.arange(-m_max, m_max + 1)
    # Undo the two cell-averaging sinc factors (histogram and sampled mask).
    harmonics = spectrum[np.mod(orders, bins)] / np.sinc(orders / bins) ** 2

    meta = {
        "speed": speed,
        "wall_margin": wall_margin,
        "seed": seed,
        "trajectories": trajectories,
        "survivors": int(counts.sum()),
        "poisson_sigma_scale": 1.0 / trajectories,
        "harmonic_ratio_2_1": _harmonic_ratio(harmonics, m_max),
    }
    return FringePattern(
        shift_grid=np.arange(bins) * (g / bins),
        signal=signal,
        harmonics=harmonics,
        period=g,
        method="classical-mc",
        meta=meta,
    )


def classical_pattern_quadrature(
    config: InterferometerConfig,
    speed: float,
    m_max: int = 10,
    n_shift: int = 128,
    wall_margin: float | None = None,
    quad_points: int = 4096,
) -> FringePattern:
    """Deterministic classical pattern for the symmetric instrument.

    Same physics as :func:`classical_pattern_mc`, evaluated by quadrature:
    with x3 = 2 x2 - x0 + D(x2), harmonic m of the shift pattern is
    A1_{-m} A3_{-m} (1/g) int exp(-2 pi i m (2 x2 + D(x2)) / g) dx2 over the
    open slit.  Serves as the independent check of the Monte Carlo sampler.
    """
    if abs(config.l1 - config.l2) > 1e-9 * config.l1:
        raise DomainError("quadrature oracle assumes l1 = l2")
    g1, g2, g3 = config.gratings
    species = config.species
    g = g2.period
    if wall_margin is None:
        wall_margin = adsorption_margin(species, g2, speed)
    h2 = 0.5 * g2.slit_width - wall_margin
    if h2 <= 0.0:
        raise DomainError("wall margin closes the diffraction grating")

    nodes, wts = np.polynomial.legendre.leggauss(quad_points)
    x2 = nodes * h2
    if species.c3_si > 0.0:
        xi = x2 + 0.5 * g2.slit_width
        kick = (CONSTANTS.reduced_planck / species.mass_kg) * wall_phase_gradient(
            species, g2, speed, xi
        )
    else:
        kick = np.zeros_like(x2)
    displaced = 2.0 * x2 + config.l2 * kick / speed

    orders = np.arange(-m_max, m_max + 1)
    a1 = intensity_mask_coefficients(g1, wall_margin, -orders)
    a3 = intensity_mask_coefficients(g3, wall_margin, -orders)
    phases = np.exp(-2j * np.pi * np.outer(orders, displaced) / g)
    gq = (phases @ wts) * (h2 / g)
    harmonics = a1 * a3 * gq

    from .engine import pattern_from_harmonics

    meta = {
        "speed": speed,
        "wall_margin": wall_margin,
        "harmonic_ratio_2_1": _harmonic_ratio(harmonics, m_max),
    }
    return pattern_from_harmonics(harmonics, g, "classical-quadrature", n_shift, meta)
