"""Exception classes for WSN graph filtering."""


class GraphFilteringError(Exception):
    """Base exception for all wsn-graph-filtering errors."""
    pass


class TopologyError(GraphFilteringError):
    """Raised when topology inputs or a topology file are invalid."""
    pass


class DimensionMismatchError(GraphFilteringError):
    """Raised when matrix, coefficient and signal dimensions disagree."""
    pass


class RealizationCountError(DimensionMismatchError):
    """Raised when a time-varying filter receives the wrong number of realizations."""
    pass


class ModeMismatchError(DimensionMismatchError):
    """Raised when node-invariant and node-variant coefficient sets are mixed."""
    pass


class SupportMismatchError(GraphFilteringError):
    """Raised when a connection matrix does not share the shift operator's link support."""
    pass


class NumericalError(GraphFilteringError):
    """Raised when an eigen-solve or linear solve fails."""
    pass


class SpectralBoundError(NumericalError):
    """Raised when power iteration does not converge within its iteration cap."""
    pass


class AsymmetricShiftError(NumericalError):
    """Raised when a closed form that needs a symmetric shift gets a non-symmetric one."""
    pass


class OptimizationError(GraphFilteringError):
    """Raised when a coefficient optimization problem is invalid or diverges."""
    pass


class RadioModelError(GraphFilteringError):
    """Raised on invalid physical-layer inputs."""
    pass


class InfeasibleBroadcastRangeError(RadioModelError):
    """Raised when P <= kappa * R_B^nu * N0, i.e. the broadcast range is not below R_m."""
    pass


class ScheduleError(GraphFilteringError):
    """Raised when a scheduling protocol trips its non-termination guard."""
    pass


class ConfigValidationError(GraphFilteringError):
    """Raised when an experiment configuration is rejected.

    Attributes:
        key_paths: Dotted key paths of every offending entry (e.g. ``radio.chi``)
    """

    def __init__(self, message: str, key_paths: list[str] | None = None):
        super().__init__(message)
        self.key_paths = key_paths or []


class InsufficientSamplesError(GraphFilteringError):
    """Raised when moment estimation receives fewer than two samples."""
    pass
