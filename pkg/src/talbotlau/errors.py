"""Exception hierarchy.

Everything raised on purpose by this package derives from
:class:`TalbotLauError`, so callers (and the CLI) can distinguish model-domain
failures from programming errors.
"""

from __future__ import annotations


class TalbotLauError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TalbotLauError, ValueError):
    """Input violates a physical or mathematical precondition."""


class DegenerateSlitError(DomainError):
    """Wall margin (or phase cutoff) closes the slit completely."""


class AliasingError(DomainError):
    """Requested Fourier order is not resolvable on the sampling grid."""


class UnsupportedMethodError(TalbotLauError):
    """Configuration outside the validity range of the chosen method."""


class ResolutionError(TalbotLauError):
    """Numerical grid too coarse to resolve the requested physics."""


class DegeneratePatternError(TalbotLauError):
    """Fringe pattern carries no flux (S_0 = 0)."""


class CoverageError(DomainError):
    """Velocity grid truncates a non-negligible part of the spectrum."""


class NoBeamError(TalbotLauError):
    """Slit geometry blocks the entire velocity range."""


class PairingError(TalbotLauError):
    """Signal/background scans cannot be paired (grid mismatch)."""


class MixedPeriodError(TalbotLauError):
    """Selected scans do not share a common fringe period."""


class CalibrationInfeasibleError(TalbotLauError):
    """Calibration target lies outside the attainable visibility range."""

    def __init__(self, message: str, attainable_min: float, attainable_max: float):
        super().__init__(message)
        self.attainable_min = attainable_min
        self.attainable_max = attainable_max


class ConfigError(TalbotLauError):
    """Invalid run configuration; carries file/line anchoring for the CLI."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:" if line is None else f"{path}:{line}:"
        super().__init__(f"{prefix} {message}".strip())
