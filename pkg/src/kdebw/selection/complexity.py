"""Complexity-based bandwidth selection.

For a bandwidth h the complexity is

    C_h = min(E_h / max E, P_h / max P)

where E_h is the Kolmogorov-Smirnov distance of the kernel cdf from the empirical
cdf, P_h the cumulative Kullback-Leibler divergence from the maximum-likelihood
Gaussian, and both maxima are taken over the acceptable interval (0, h_p],
h_p being the minimizer of P_h. The selected bandwidth h_c maximizes C_h there.

C_h is the minimum of two curves and has kinks where they cross, so the maximum
is located on a grid and refined only locally.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from kdebw.config.models import QuadratureConfig, SearchConfig
from kdebw.core.density import KernelDensity
from kdebw.core.sample import Sample
from kdebw.divergence.gaussianFit import GaussianFit, fitGaussian
from kdebw.divergence.statistics import cumulativeKl, ksVsEmpirical
from kdebw.exceptions import ConfigurationError, QuadratureError
from kdebw.logging.config import SELECTION_LOGGER
from kdebw.selection.result import BandwidthMethod, BandwidthResult
from kdebw.selection.search import (
    evaluateOnGrid,
    geometricGrid,
    goldenSectionMinimize,
    interiorOptimum,
    ternarySearchMaximize,
)

logger = logging.getLogger(SELECTION_LOGGER)

_DEFAULT_SEARCH = SearchConfig()


@dataclass(frozen=True)
class ComplexityScaling:
    """Denominators of the scaled complexity.

    Attributes:
        eMax: Largest E_h on the curve grid within (0, h_p].
        pMax: Largest P_h on the curve grid within (0, h_p].
        hP: Upper edge of the acceptable interval.
    """

    eMax: float
    pMax: float
    hP: float

    def __post_init__(self) -> None:
        if not (self.eMax > 0 and self.pMax > 0):
            raise QuadratureError(
                f"Complexity scaling needs positive maxima, got eMax={self.eMax!r}, "
                f"pMax={self.pMax!r}"
            )

    def complexity(self, eValue: float | np.ndarray, pValue: float | np.ndarray) -> Any:
        """min(E / eMax, P / pMax)."""
        return np.minimum(np.asarray(eValue) / self.eMax, np.asarray(pValue) / self.pMax)


@dataclass(frozen=True, eq=False)
class ComplexityCurve:
    """Tabulated divergences and complexity over a bandwidth grid.

    Points beyond h_p (flagged in beyondHp) are for display only: h_c and the
    scaling maxima use the points up to h_p.

    Attributes:
        grid: Ascending bandwidths.
        eValues: E_h on the grid.
        pValues: P_h on the grid.
        cValues: C_h on the grid.
        beyondHp: True where the bandwidth exceeds h_p.
        hP: Minimizer of P_h.
        hC: Grid argmax of C_h over (0, h_p].
        eMax: Max E_h over the grid points up to h_p.
        pMax: Max P_h over the grid points up to h_p.
    """

    grid: np.ndarray
    eValues: np.ndarray
    pValues: np.ndarray
    cValues: np.ndarray
    beyondHp: np.ndarray
    hP: float
    hC: float
    eMax: float
    pMax: float

    @property
    def scaling(self) -> ComplexityScaling:
        """Scaling maxima as a reusable value."""
        return ComplexityScaling(eMax=self.eMax, pMax=self.pMax, hP=self.hP)

    @property
    def acceptable(self) -> np.ndarray:
        """Mask of grid points within (0, h_p]."""
        return ~self.beyondHp

    @property
    def maxComplexity(self) -> float:
        """Largest C_h over (0, h_p]."""
        return float(np.max(self.cValues[self.acceptable]))

    def __len__(self) -> int:
        return int(self.grid.size)

    def toDict(self) -> dict[str, Any]:
        """Convert to dictionary (summary, without the tabulated values)."""
        return {
            "points": len(self),
            "hP": self.hP,
            "hC": self.hC,
            "eMax": self.eMax,
            "pMax": self.pMax,
            "maxComplexity": self.maxComplexity,
        }


def _reference(sample: Sample) -> GaussianFit:
    return fitGaussian(sample)


def kernelDivergence(
    sample: Sample, bandwidth: float, reference: GaussianFit, quad: QuadratureConfig
) -> tuple[float, float]:
    """(E_h, P_h) for one bandwidth."""
    kd = KernelDensity(sample, bandwidth)
    return ksVsEmpirical(kd), cumulativeKl(kd, reference, quad)


def _locateHp(
    sample: Sample, search: SearchConfig
) -> tuple[float, float, list[tuple[float, float]]]:
    reference = _reference(sample)
    quad = search.quadrature
    lower = search.hpLowerFactor * sample.std
    upper = search.hpUpperRangeFactor * sample.spread
    if not upper > lower:
        raise ConfigurationError(f"Empty h_p search interval [{lower:.6g}, {upper:.6g}]")

    def objective(h: float) -> float:
        return cumulativeKl(KernelDensity(sample, h), reference, quad)

    grid = geometricGrid(lower, upper, search.hpGridPoints)
    values = evaluateOnGrid(objective, grid, search.workers)
    index = interiorOptimum(grid, values, "cumulative Kullback-Leibler", "min")

    trace = [(float(h), float(v)) for h, v in zip(grid, values)]
    hP, pValue = goldenSectionMinimize(
        objective,
        float(grid[index - 1]),
        float(grid[index + 1]),
        search.hpRelTol,
        incumbent=(float(grid[index]), float(values[index])),
        trace=trace,
    )
    logger.debug("h_p=%.6g (P=%.6g) after %d evaluations", hP, pValue, len(trace))
    return hP, pValue, trace


def findHp(sample: Sample | ArrayLike, search: SearchConfig | None = None) -> float:
    """Bandwidth whose kernel cdf is closest to the fitted Gaussian.

    Minimizes P_h over a geometric grid, then refines by golden section between
    the grid neighbours of the best point.

    Raises:
        SearchBoundaryError: If the grid minimum is at either end of the interval.
    """
    hP, _, _ = _locateHp(Sample.of(sample), search or _DEFAULT_SEARCH)
    return hP


def complexityAt(
    sample: Sample | ArrayLike,
    h: float,
    scaling: ComplexityScaling | tuple[float, float],
    quad: QuadratureConfig | None = None,
) -> float:
    """Scaled complexity min(E_h / eMax, P_h / pMax) at one bandwidth.

    Bandwidths above h_p are evaluated too, with the same scaling.
    """
    sample = Sample.of(sample)
    if not isinstance(scaling, ComplexityScaling):
        eMax, pMax = scaling
        scaling = ComplexityScaling(eMax=float(eMax), pMax=float(pMax), hP=float("inf"))
    eValue, pValue = kernelDivergence(
        sample, h, _reference(sample), quad or _DEFAULT_SEARCH.quadrature
    )
    return float(scaling.complexity(eValue, pValue))


def buildComplexityCurve(
    sample: Sample | ArrayLike,
    search: SearchConfig | None = None,
    hP: float | None = None,
) -> ComplexityCurve:
    """Tabulate E_h, P_h and C_h from h_min up to h_p, plus flagged points beyond.

    Args:
        sample: Observations.
        search: Grid sizes and tolerances.
        hP: Precomputed h_p; located when omitted.

    Raises:
        SearchBoundaryError: Propagated from the h_p search.
    """
    sample = Sample.of(sample)
    search = search or _DEFAULT_SEARCH
    if hP is None:
        hP, _, _ = _locateHp(sample, search)

    hMin = search.curveMinFactor * sample.std
    if not hMin < hP:
        raise ConfigurationError(f"h_min={hMin:.6g} is not below h_p={hP:.6g}")
    inside = geometricGrid(hMin, hP, search.curvePoints)
    if search.extendPoints > 0:
        beyond = geometricGrid(hP, search.extendFactor * hP, search.extendPoints + 1)[1:]
    else:
        beyond = np.empty(0)
    grid = np.concatenate([inside, beyond])
    beyondHp = np.concatenate([np.zeros(inside.size, bool), np.ones(beyond.size, bool)])

    reference = _reference(sample)
    quad = search.quadrature

    def divergencePair(h: float) -> Any:
        return kernelDivergence(sample, h, reference, quad)

    pairs = evaluateOnGrid(divergencePair, grid, search.workers)
    eValues = np.ascontiguousarray(pairs[:, 0])
    pValues = np.ascontiguousarray(pairs[:, 1])

    scaling = ComplexityScaling(
        eMax=float(eValues[~beyondHp].max()),
        pMax=float(pValues[~beyondHp].max()),
        hP=float(hP),
    )
    cValues = scaling.complexity(eValues, pValues)
    hC = float(inside[int(np.argmax(cValues[~beyondHp]))])

    logger.debug("complexity curve: %d points, h_p=%.6g, grid h_c=%.6g", grid.size, hP, hC)
    return ComplexityCurve(
        grid=grid,
        eValues=eValues,
        pValues=pValues,
        cValues=cValues,
        beyondHp=beyondHp,
        hP=float(hP),
        hC=hC,
        eMax=scaling.eMax,
        pMax=scaling.pMax,
    )


def selectHc(
    sample: Sample | ArrayLike,
    search: SearchConfig | None = None,
    curve: ComplexityCurve | None = None,
) -> BandwidthResult:
    """Maximum-complexity bandwidth on (0, h_p].

    Takes the grid argmax of the complexity curve and refines it by ternary search
    between its grid neighbours, never above h_p.

    Args:
        sample: Observations.
        search: Grid sizes and tolerances.
        curve: Precomputed curve for the same sample and search config.
    """
    sample = Sample.of(sample)
    search = search or _DEFAULT_SEARCH
    curve = curve or buildComplexityCurve(sample, search)
    scaling = curve.scaling
    reference = _reference(sample)
    quad = search.quadrature

    acceptableGrid = curve.grid[curve.acceptable]
    acceptableC = curve.cValues[curve.acceptable]
    index = int(np.argmax(acceptableC))
    lower = float(acceptableGrid[max(index - 1, 0)])
    upper = float(acceptableGrid[min(index + 1, acceptableGrid.size - 1)])

    def objective(h: float) -> float:
        eValue, pValue = kernelDivergence(sample, h, reference, quad)
        return float(scaling.complexity(eValue, pValue))

    trace = [(float(h), float(c)) for h, c in zip(acceptableGrid, acceptableC)]
    hC, cValue = ternarySearchMaximize(
        objective,
        lower,
        upper,
        search.hcRelTol,
        incumbent=(float(acceptableGrid[index]), float(acceptableC[index])),
        trace=trace,
    )
    if hC > curve.hP:
        hC = curve.hP
        cValue = objective(hC)
        trace.append((hC, cValue))

    logger.info("h_c=%.6g (C=%.4f, h_p=%.6g)", hC, cValue, curve.hP)
    return BandwidthResult(
        method=BandwidthMethod.COMPLEXITY,
        bandwidth=hC,
        objective=cValue,
        trace=trace,
        details={
            "hP": curve.hP,
            "gridHc": curve.hC,
            "eMax": curve.eMax,
            "pMax": curve.pMax,
        },
    )
