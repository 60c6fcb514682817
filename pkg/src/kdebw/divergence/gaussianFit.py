"""Maximum-likelihood Gaussian reference distribution."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import ndtr

from kdebw.core.sample import Sample, asFiniteArray
from kdebw.exceptions import DegenerateSampleError


@dataclass(frozen=True)
class GaussianFit:
    """Gaussian with maximum-likelihood parameters.

    Attributes:
        mean: Estimated mean.
        std: Estimated standard deviation (divisor n), positive.
    """

    mean: float
    std: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.std) and self.std > 0):
            raise ValueError(f"Gaussian std must be positive, got {self.std!r}")

    def pdf(self, x: ArrayLike) -> np.ndarray:
        """Density of the fitted Gaussian."""
        z = (np.asarray(x, dtype=float) - self.mean) / self.std
        return np.exp(-0.5 * z * z) / (self.std * math.sqrt(2.0 * math.pi))

    def cdf(self, x: ArrayLike) -> np.ndarray:
        """Distribution function of the fitted Gaussian."""
        return ndtr((np.asarray(x, dtype=float) - self.mean) / self.std)

    def toDict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"mean": self.mean, "std": self.std}


def fitGaussian(sample: Sample | ArrayLike) -> GaussianFit:
    """Fit a Gaussian by maximum likelihood.

    Args:
        sample: Observations (a Sample or raw values).

    Returns:
        Mean and divisor-n standard deviation.

    Raises:
        DegenerateSampleError: If the observations have zero variance.
    """
    values = sample.values if isinstance(sample, Sample) else asFiniteArray(sample)
    std = float(np.std(values))
    if not std > 0:
        raise DegenerateSampleError(int(values.size))
    return GaussianFit(mean=float(np.mean(values)), std=std)
