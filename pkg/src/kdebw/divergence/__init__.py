"""Divergences and complexity statistics."""

from kdebw.divergence.gaussianFit import GaussianFit, fitGaussian
from kdebw.divergence.statistics import (
    cumulativeKl,
    densitySupport,
    euclideanDivergenceFromUniform,
    integratedSquaredError,
    ksVsEmpirical,
    lmcComplexity,
    shannonEntropy,
)

__all__ = [
    "GaussianFit",
    "fitGaussian",
    "ksVsEmpirical",
    "cumulativeKl",
    "shannonEntropy",
    "euclideanDivergenceFromUniform",
    "lmcComplexity",
    "integratedSquaredError",
    "densitySupport",
]
