"""Direct paraxial-propagation oracle for the quantum fringe pattern.

Independent numerical route checking the closed-form coefficient method:
no Fourier-series algebra of the interferometer enters here, only sampled
fields, FFT free propagation and sampled masks.

For each incoherent source position x0 on the first grating (Gauss-Legendre
nodes across one open slit, weighted by the intensity transmission), the
paraxial point-source wave exp(i pi (x-x0)^2 / (lambda l1)) is written
directly on the second-grating plane, multiplied by the complex grating
transmission, propagated over l2 with the exact paraxial transfer function
exp(-i pi lambda l2 f^2), and squared into an intensity.  The accumulated
intensity is folded period-wise over a central detector region an even
number of periods wide (which annihilates the odd source harmonics exactly,
as the closed form requires) and correlated with the shifted third-grating
mask to give S(s).

Supports unequal arms l1 != l2, unlike the coefficient method.
"""

from __future__ import annotations

import numpy as np

from .core import InterferometerConfig, de_broglie_wavelength
from .engine import FringePattern, _harmonic_ratio
from .errors import DomainError, ResolutionError
from .gratings import adsorption_margin, build_transmission, wall_phase_gradient


def _propagate(field: np.ndarray, dist: float, wavelength: float, dx: float) -> np.ndarray:
    """Free paraxial propagation over ``dist`` on a uniform grid."""
    freqs = np.fft.fftfreq(field.size, d=dx)
    kernel = np.exp(-1j * np.pi * wavelength * dist * freqs ** 2)
    return np.fft.ifft(np.fft.fft(field) * kernel)


def quantum_pattern_fresnel(
    config: InterferometerConfig,
    speed: float,
    source_samples: int = 64,
    grid_size: int = 2 ** 20,
    window_periods: int = 128,
    detector_periods: int = 8,
    m_max: int = 10,
    n_shift: int = 128,
    wall_margin: float | None = None,
) -> FringePattern:
    """Quantum fringe pattern by brute-force paraxial propagation."""
    if grid_size < 4096 or grid_size & (grid_size - 1) != 0:
        raise DomainError(f"grid_size must be a power of two >= 4096, got {grid_size}")
    if source_samples < 64:
        raise DomainError(f"source_samples must be >= 64, got {source_samples}")
    if window_periods % 2 != 0 or detector_periods % 2 != 0:
        raise DomainError("window_periods and detector_periods must be even")
    if grid_size % window_periods != 0:
        raise DomainError("grid_size must be divisible by window_periods")

    g1, g2, g3 = config.gratings
    species = config.species
    g = g2.period
    lam = de_broglie_wavelength(species, speed)
    if wall_margin is None:
        wall_margin = adsorption_margin(species, g2, speed)

    n_pp = grid_size // window_periods
    dx = g / n_pp
    if wall_margin > 0.0:
        if dx > 0.5 * wall_margin:
            raise ResolutionError(
                f"grid step {dx:.3e} m does not resolve wall margin {wall_margin:.3e} m"
            )
        steepest = abs(wall_phase_gradient(species, g2, speed, wall_margin))
        if dx * steepest > 0.7:
            raise ResolutionError(
                "grid step does not resolve the retained wall-phase gradient"
            )
    if n_shift > n_pp or n_pp % n_shift != 0:
        raise DomainError("n_shift must divide the per-period sample count")

    # One-period profiles on the window sampling; rolled so slit centres sit
    # at integer multiples of g on the window axis.
    t2_profile = build_transmission(
        species, g2, speed, sample_count=n_pp, wall_margin=wall_margin
    ).samples
    t2 = np.tile(np.roll(t2_profile, -(n_pp // 2)), window_periods)
    t3_occ = build_transmission(
        species, g3, speed, sample_count=n_pp, wall_margin=wall_margin
    ).intensity_samples
    t3 = np.roll(t3_occ, -(n_pp // 2))

    x = (np.arange(grid_size) + 0.5 - grid_size / 2) * dx

    # Incoherent source: Gauss-Legendre nodes across one open slit of grating 1
    # (|t1|^2 = 1 there and 0 elsewhere, so equal-density weighting is exact).
    half_open = 0.5 * g1.slit_width - wall_margin
    if half_open <= 0.0:
        raise DomainError("first grating is fully closed by the wall margin")
    nodes, wts = np.polynomial.legendre.leggauss(source_samples)
    x0s = nodes * half_open
    weights = wts / wts.sum()

    intensity = np.zeros(grid_size)
    for x0, w in zip(x0s, weights):
        u = np.exp(1j * np.pi * (x - x0) ** 2 / (lam * config.l1)) * t2
        u3 = _propagate(u, config.l2, lam, dx)
        intensity += w * np.abs(u3) ** 2

    # Fold the central detector region period-wise and correlate with the
    # shifted third-grating mask: S(s_k) for all n_pp shifts at once.
    start = grid_size // 2 - detector_periods * n_pp // 2
    block = intensity[start : start + detector_periods * n_pp]
    folded = block.reshape(detector_periods, n_pp).sum(axis=0)
    corr = np.fft.ifft(np.fft.fft(folded) * np.conj(np.fft.fft(t3))).real
    signal_full = corr * dx / (detector_periods * g)

    spectrum = np.fft.fft(signal_full) / n_pp
    orders = np.arange(-m_max, m_max + 1)
    harmonics = spectrum[np.mod(orders, n_pp)]

    stride = n_pp // n_shift
    meta = {
        "speed": speed,
        "wall_margin": wall_margin,
        "source_samples": source_samples,
        "grid_size": grid_size,
        "harmonic_ratio_2_1": _harmonic_ratio(harmonics, m_max),
    }
    return FringePattern(
        shift_grid=np.arange(n_shift) * (g / n_shift),
        signal=signal_full[::stride].copy(),
        harmonics=harmonics,
        period=g,
        method="quantum-fresnel",
        meta=meta,
    )
