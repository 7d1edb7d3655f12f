"""Fringe patterns: quantum coefficient method, geometric shadow, averaging.

The detector signal behind the third grating is periodic in the grating
shift s with the grating period g and is represented by its harmonics,

    S(s) = sum_m S_m exp(2 pi i m s / g).

For the symmetric instrument (equal arms L) an incoherently illuminated
first grating admits a closed form obtained from the stationary-phase
paraxial integral: a point source at x0 propagated over L, diffracted by
the second grating (coefficients b_n of its complex transmission) and
propagated over L produces intensity harmonics in which only even Fourier
differences survive the source average, leaving

    S_m = A1_{-m} A3_{-m} sum_n b_n conj(b_{n-2m})
          * exp(-2 pi i m (n - m) L / L_T),

with A1, A3 the intensity-mask coefficients of the outer gratings and
L_T = g^2 / lambda_dB the self-imaging length.  The independent Fresnel
propagation oracle in :mod:`talbotlau.fresnel` checks this route end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import InterferometerConfig, de_broglie_wavelength, talbot_length
from .errors import (
    CoverageError,
    DegeneratePatternError,
    DomainError,
    UnsupportedMethodError,
)
from .gratings import adsorption_margin, intensity_mask_coefficients, transmission_spectrum

DEFAULT_SHIFT_SAMPLES = 128


@dataclass(frozen=True)
class FringePattern:
    """Sampled detector signal vs third-grating shift plus its harmonics."""

    shift_grid: np.ndarray
    signal: np.ndarray
    harmonics: np.ndarray  # complex, index m + m_max
    period: float
    method: str
    meta: Mapping[str, float] = field(default_factory=dict)

    @property
    def m_max(self) -> int:
        return (len(self.harmonics) - 1) // 2

    def harmonic(self, m: int) -> complex:
        if abs(m) > self.m_max:
            raise DomainError(f"harmonic {m} outside |m| <= {self.m_max}")
        return complex(self.harmonics[m + self.m_max])

    @property
    def mean_level(self) -> float:
        return float(np.real(self.harmonic(0)))


def pattern_from_harmonics(
    harmonics: np.ndarray,
    period: float,
    method: str,
    n_shift: int = DEFAULT_SHIFT_SAMPLES,
    meta: Mapping[str, float] | None = None,
) -> FringePattern:
    """Synthesize S(s) on ``n_shift`` points of [0, g) from its harmonics."""
    m_max = (len(harmonics) - 1) // 2
    shifts = np.arange(n_shift) * (period / n_shift)
    orders = np.arange(-m_max, m_max + 1)
    signal = np.real(np.exp(2j * np.pi * np.outer(shifts, orders) / period) @ harmonics)
    return FringePattern(
        shift_grid=shifts,
        signal=signal,
        harmonics=np.asarray(harmonics, dtype=complex),
        period=period,
        method=method,
        meta=dict(meta or {}),
    )


@dataclass(frozen=True)
class VelocityDistribution:
    """Discrete speed distribution: grid, normalized weights, summary stats."""

    grid: np.ndarray
    weights: np.ndarray
    mean: float
    fwhm_fraction: float

    def __post_init__(self) -> None:
        if len(self.grid) == 0 or len(self.grid) != len(self.weights):
            raise DomainError("grid and weights must be non-empty and equal length")
        if np.any(self.weights < 0.0):
            raise DomainError("weights must be nonnegative")
        total = float(np.sum(self.weights))
        if abs(total - 1.0) > 1e-9:
            raise DomainError(f"weights must sum to 1 +- 1e-9, got {total}")
        mean = float(np.dot(self.grid, self.weights))
        if abs(mean - self.mean) > 1e-6 * max(abs(mean), 1.0):
            raise DomainError("stored mean inconsistent with grid/weights")

    @classmethod
    def from_weights(cls, grid: np.ndarray, weights: np.ndarray) -> "VelocityDistribution":
        grid = np.asarray(grid, dtype=float)
        weights = np.asarray(weights, dtype=float)
        total = float(np.sum(weights))
        if total <= 0.0:
            raise DomainError("weights sum to zero")
        weights = weights / total
        mean = float(np.dot(grid, weights))
        return cls(grid=grid, weights=weights, mean=mean,
                   fwhm_fraction=fwhm_fraction(grid, weights))


def fwhm_bounds(grid: np.ndarray, weights: np.ndarray) -> tuple[float, float]:
    """Half-maximum crossing points of a sampled distribution (linear interp)."""
    w = np.asarray(weights, dtype=float)
    x = np.asarray(grid, dtype=float)
    peak = np.argmax(w)
    half = 0.5 * w[peak]
    lo = x[0]
    for i in range(peak, 0, -1):
        if w[i - 1] <= half:
            lo = x[i - 1] + (half - w[i - 1]) / (w[i] - w[i - 1]) * (x[i] - x[i - 1])
            break
    hi = x[-1]
    for i in range(peak, len(x) - 1):
        if w[i + 1] <= half:
            hi = x[i] + (w[i] - half) / (w[i] - w[i + 1]) * (x[i + 1] - x[i])
            break
    return lo, hi


def fwhm_fraction(grid: np.ndarray, weights: np.ndarray) -> float:
    lo, hi = fwhm_bounds(grid, weights)
    mean = float(np.dot(grid, weights) / np.sum(weights))
    return (hi - lo) / mean


def gaussian_distribution(
    v_mean: float, fwhm_frac: float, n_nodes: int = 21, span_sigmas: float = 3.0
) -> VelocityDistribution:
    """Gaussian speed distribution of given mean and FWHM/mean fraction."""
    if v_mean <= 0.0 or fwhm_frac <= 0.0:
        raise DomainError("v_mean and fwhm fraction must be positive")
    sigma = fwhm_frac * v_mean / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    lo = max(v_mean - span_sigmas * sigma, 1e-3 * v_mean)
    hi = v_mean + span_sigmas * sigma
    grid = np.linspace(lo, hi, n_nodes)
    weights = np.exp(-0.5 * ((grid - v_mean) / sigma) ** 2)
    return VelocityDistribution.from_weights(grid, weights)


def delta_distribution(speed: float) -> VelocityDistribution:
    return VelocityDistribution(
        grid=np.array([speed]), weights=np.array([1.0]), mean=speed, fwhm_fraction=0.0
    )


def length_over_talbot(config: InterferometerConfig, speed: float) -> float:
    lam = de_broglie_wavelength(config.species, speed)
    return config.l1 / talbot_length(config.gratings[1].period, lam)


def quantum_pattern_coefficients(
    config: InterferometerConfig,
    speed: float,
    m_max: int = 10,
    n_shift: int = DEFAULT_SHIFT_SAMPLES,
    sample_count: int = 32768,
    wall_margin: float | None = None,
) -> FringePattern:
    """Closed-form quantum fringe pattern for the symmetric instrument.

    Requires l1 = l2; asymmetric setups must use the Fresnel oracle.  The
    outer gratings enter through their intensity masks only, the middle one
    through the full complex transmission at this speed.
    """
    if not config.is_symmetric:
        raise UnsupportedMethodError(
            "coefficient method requires l1 = l2; use quantum_pattern_fresnel"
        )
    if m_max < 1:
        raise DomainError(f"m_max must be >= 1, got {m_max}")
    g1, g2, g3 = config.gratings
    species = config.species
    if wall_margin is None:
        wall_margin = adsorption_margin(species, g2, speed)
    coeffs, _ = transmission_spectrum(
        species, g2, speed, sample_count=sample_count, wall_margin=wall_margin
    )
    half = sample_count // 2 - 1
    ratio = length_over_talbot(config, speed)

    orders_m = np.arange(-m_max, m_max + 1)
    a1 = intensity_mask_coefficients(g1, wall_margin, -orders_m)
    a3 = intensity_mask_coefficients(g3, wall_margin, -orders_m)

    harmonics = np.zeros(2 * m_max + 1, dtype=complex)
    n = np.arange(-half, half + 1)
    for i, m in enumerate(orders_m):
        lo = max(-half, -half + 2 * m)
        hi = min(half, half + 2 * m)
        sel = slice(lo + half, hi + half + 1)
        n_sel = n[sel]
        b_n = coeffs[sel]
        b_shift = coeffs[n_sel - 2 * m + half]
        phase = np.exp(-2j * np.pi * m * (n_sel - m) * ratio)
        harmonics[i] = a1[i] * a3[i] * np.sum(b_n * np.conj(b_shift) * phase)

    meta = {
        "speed": speed,
        "wall_margin": wall_margin,
        "length_over_talbot": ratio,
        "harmonic_ratio_2_1": _harmonic_ratio(harmonics, m_max),
    }
    return pattern_from_harmonics(harmonics, g2.period, "quantum-coefficient", n_shift, meta)


def _harmonic_ratio(harmonics: np.ndarray, m_max: int) -> float:
    """|S_2|/|S_1| truncation diagnostic (inf when S_1 vanishes)."""
    if m_max < 2:
        return float("nan")
    s1 = abs(harmonics[1 + m_max])
    s2 = abs(harmonics[2 + m_max])
    return float(s2 / s1) if s1 > 0.0 else float("inf")


def classical_shadow(
    config: InterferometerConfig,
    m_max: int = 10,
    n_shift: int = DEFAULT_SHIFT_SAMPLES,
    wall_margin: float = 0.0,
) -> FringePattern:
    """Geometric (moire) shadow of three binary masks, no wall interaction.

    Exact convolution over one period: a straight ray through x0 on the
    first and x2 on the second grating reaches x3 = x2 (1 + r) - r x0 with
    r = l2/l1, so harmonic m of the shift pattern picks the second-grating
    intensity order m (1 + r), which must be an integer; the symmetric case
    r = 1 gives the familiar A1_{-m} A2_{2m} A3_{-m}.  Independent of speed
    and of a common scaling of both arms.
    """
    g1, g2, g3 = config.gratings
    r = config.l2 / config.l1
    orders_m = np.arange(-m_max, m_max + 1)
    a1 = intensity_mask_coefficients(g1, wall_margin, -orders_m)
    a3 = intensity_mask_coefficients(g3, wall_margin, -orders_m)
    harmonics = np.zeros(2 * m_max + 1, dtype=complex)
    for i, m in enumerate(orders_m):
        mu = m * (1.0 + r)
        mu_int = round(mu)
        if abs(mu - mu_int) > 1e-9 and m != 0:
            continue  # incommensurate magnification: the harmonic washes out
        a2 = intensity_mask_coefficients(g2, wall_margin, np.array([mu_int]))[0]
        harmonics[i] = a1[i] * a2 * a3[i]
    meta = {"harmonic_ratio_2_1": _harmonic_ratio(harmonics, m_max)}
    return pattern_from_harmonics(harmonics, g2.period, "classical-shadow", n_shift, meta)


def _pairwise_sum(arrays: Sequence[np.ndarray]) -> np.ndarray:
    """Deterministic pairwise reduction; independent of evaluation order."""
    items = list(arrays)
    if not items:
        raise DomainError("nothing to reduce")
    while len(items) > 1:
        items = [
            items[i] + items[i + 1] if i + 1 < len(items) else items[i]
            for i in range(0, len(items), 2)
        ]
    return items[0]


def velocity_average(
    pattern_fn: Callable[[float], FringePattern],
    dist: VelocityDistribution,
    threads: int = 0,
) -> FringePattern:
    """Incoherent average of patterns over a speed distribution.

    Harmonic-wise weighted sum; the per-speed evaluations are independent
    and may run in parallel (``threads > 1``), with a pairwise reduction in
    grid order so serial and parallel results agree to the last bit.
    """
    if len(dist.grid) == 0:
        raise DomainError("empty velocity distribution")
    speeds = list(map(float, dist.grid))
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            patterns = list(pool.map(pattern_fn, speeds))
    else:
        patterns = [pattern_fn(v) for v in speeds]
    m_max = patterns[0].m_max
    period = patterns[0].period
    for p in patterns:
        if p.m_max != m_max or abs(p.period - period) > 1e-12 * period:
            raise DomainError("patterns on the velocity grid are incompatible")
    harmonics = _pairwise_sum(
        [w * p.harmonics for w, p in zip(dist.weights, patterns)]
    )
    meta = {
        "mean_speed": dist.mean,
        "fwhm_fraction": dist.fwhm_fraction,
        "harmonic_ratio_2_1": _harmonic_ratio(harmonics, m_max),
    }
    return pattern_from_harmonics(
        harmonics, period, patterns[0].method, len(patterns[0].shift_grid), meta
    )


def visibility(pattern: FringePattern, mode: str = "sine-fit") -> float:
    """Fringe visibility of a pattern.

    ``first-harmonic`` returns 2 |S_1| / S_0; ``sine-fit`` least-squares fits
    a + c sin(2 pi s / g + phi) to the sampled signal and returns c / a.
    The two agree to better than 1% absolute while |S_2|/|S_1| < 0.05.
    """
    s0 = pattern.mean_level
    if s0 <= 0.0:
        raise DegeneratePatternError("pattern carries no flux (S_0 <= 0)")
    if mode == "first-harmonic":
        return 2.0 * abs(pattern.harmonic(1)) / s0
    if mode == "sine-fit":
        s = pattern.shift_grid
        arg = 2.0 * np.pi * s / pattern.period
        design = np.column_stack([np.ones_like(s), np.sin(arg), np.cos(arg)])
        sol, *_ = np.linalg.lstsq(design, pattern.signal, rcond=None)
        a, bs, bc = sol
        if a <= 0.0:
            raise DegeneratePatternError("fitted mean level is not positive")
        return float(np.hypot(bs, bc) / a)
    raise DomainError(f"unknown visibility mode {mode!r}")
