"""kdebw exception hierarchy.

All kdebw exceptions inherit from KdebwError for easy catching.
"""

from __future__ import annotations

from typing import Sequence


class KdebwError(Exception):
    """Base exception for all kdebw errors."""

    pass


class InvalidSampleError(KdebwError):
    """Raised when observations violate the sample invariants."""

    pass


class DegenerateSampleError(InvalidSampleError):
    """Raised when a sample has zero variance and no usable fit."""

    def __init__(self, size: int):
        self.size = size
        super().__init__(f"Sample of size {size} has zero variance")


class UnsupportedKernelError(KdebwError):
    """Raised when a kernel other than the Gaussian one is requested."""

    def __init__(self, kind: str):
        self.kind = kind
        super().__init__(f"Kernel '{kind}' is not supported (only 'gaussian')")


class QuadratureError(KdebwError):
    """Raised when a numerical integrand is not finite."""

    pass


class SearchBoundaryError(KdebwError):
    """Raised when an optimum sits on the edge of the search interval."""

    def __init__(self, criterion: str, bandwidth: float, lower: float, upper: float):
        self.criterion = criterion
        self.bandwidth = bandwidth
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"Optimum of '{criterion}' at h={bandwidth:.6g} lies on the search boundary "
            f"[{lower:.6g}, {upper:.6g}]; the optimum is not bracketed"
        )


class ConvergenceError(KdebwError):
    """Raised when a fixed-point iteration fails to converge."""

    def __init__(self, message: str, trace: Sequence[tuple[float, float]]):
        self.trace = list(trace)
        super().__init__(f"{message} after {len(self.trace)} iterations")


class UndefinedProbabilityError(KdebwError):
    """Raised when a conditional probability has a vanishing denominator."""

    def __init__(self, name: str, value: float):
        self.name = name
        self.value = value
        super().__init__(f"Probability {name}={value:.3g} too small to condition on")


class HurstEstimationError(KdebwError):
    """Raised when the rescaled-range estimator cannot be computed."""

    pass


class DataIngestError(KdebwError):
    """Raised when price data cannot be parsed."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        if row is not None:
            message = f"Row {row}: {message}"
        super().__init__(message)


class DuplicateDatesError(DataIngestError):
    """Raised when the same calendar date appears more than once."""

    def __init__(self, dates: Sequence[str]):
        self.dates = list(dates)
        super().__init__(f"Duplicate dates: {', '.join(self.dates)}")


class EmptyYearError(DataIngestError):
    """Raised when a calendar year holds no returns."""

    def __init__(self, year: int):
        self.year = year
        super().__init__(f"No returns dated in year {year}")


class ConfigurationError(KdebwError):
    """Raised when configuration is invalid or inconsistent."""

    pass


class StorageError(KdebwError):
    """Raised when writing or reading output files fails."""

    pass
