"""Reference bandwidth selectors: AMISE plug-in, validation likelihood, PIT.

The likelihood and PIT criteria fit the kernel estimate on the training sample
only and score it on a separate validation set.
"""

from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from kdebw.config.models import PitConfig, SearchConfig
from kdebw.core.density import KernelDensity, silvermanBandwidth
from kdebw.core.kernel import GAUSSIAN_KERNEL, KernelSpec
from kdebw.core.sample import Sample, ValidationSet
from kdebw.exceptions import ConfigurationError, ConvergenceError, SearchBoundaryError
from kdebw.logging.config import SELECTION_LOGGER
from kdebw.selection.result import BandwidthMethod, BandwidthResult
from kdebw.selection.search import (
    evaluateOnGrid,
    geometricGrid,
    goldenSectionMinimize,
    interiorOptimum,
)

logger = logging.getLogger(SELECTION_LOGGER)

_DEFAULT_SEARCH = SearchConfig()
_DEFAULT_PIT = PitConfig()

# Iterates outside [1e-12, 1e6] * sigma are treated as divergence.
_MIN_RELATIVE_H = 1e-12
_MAX_RELATIVE_H = 1e6

RoughnessFn = Callable[[float], float]


def amiseUpdate(
    sample: Sample,
    h: float,
    roughness: RoughnessFn | None = None,
    kernel: KernelSpec = GAUSSIAN_KERNEL,
) -> float:
    """One step of the plug-in map  h -> [R(K) / (n mu2(K)^2 R(f_h''))]^(1/5).

    Args:
        sample: Observations.
        h: Current bandwidth.
        roughness: Replacement for R(f_h'') as a function of h (e.g. the true
            curvature of a known density); defaults to the kernel estimate's.
        kernel: Kernel spec.
    """
    if roughness is None:
        curvature = KernelDensity(sample, h, kernel).secondDerivativeRoughness()
    else:
        curvature = roughness(h)
    return float(
        (kernel.roughness / (sample.n * kernel.secondMoment**2 * curvature)) ** 0.2
    )


def selectAmisePlugin(
    sample: Sample | ArrayLike,
    tol: float | None = None,
    maxIter: int | None = None,
    *,
    roughness: RoughnessFn | None = None,
    kernel: KernelSpec = GAUSSIAN_KERNEL,
) -> BandwidthResult:
    """Solve the AMISE fixed-point equation by direct iteration.

    Starts from the rule-of-thumb bandwidth and stops when a step moves h by less
    than tol * sigma.

    Args:
        sample: Observations.
        tol: Step tolerance relative to sigma (default 1e-5).
        maxIter: Iteration cap (default 200).
        roughness: Optional replacement for R(f_h''), see amiseUpdate.
        kernel: Kernel spec.

    Raises:
        ConvergenceError: On non-convergence or divergence to 0 or infinity;
            the error carries the trace.
    """
    sample = Sample.of(sample)
    tol = _DEFAULT_SEARCH.amiseTol if tol is None else tol
    maxIter = _DEFAULT_SEARCH.amiseMaxIter if maxIter is None else maxIter
    if not tol > 0:
        raise ConfigurationError(f"AMISE tolerance must be positive, got {tol!r}")

    sigma = sample.std
    h = silvermanBandwidth(sample)
    trace: list[tuple[float, float]] = [(h, math.nan)]

    for _ in range(maxIter):
        hNext = amiseUpdate(sample, h, roughness, kernel)
        step = hNext - h
        trace.append((hNext, abs(step)))
        if not (
            math.isfinite(hNext) and _MIN_RELATIVE_H * sigma < hNext < _MAX_RELATIVE_H * sigma
        ):
            raise ConvergenceError(f"AMISE plug-in diverged to h={hNext!r}", trace)
        h = hNext
        if abs(step) < tol * sigma:
            logger.info("h_AMISE=%.6g after %d iterations", h, len(trace) - 1)
            return BandwidthResult(
                method=BandwidthMethod.AMISE,
                bandwidth=h,
                objective=abs(step),
                trace=trace,
                details={"iterations": len(trace) - 1, "start": trace[0][0]},
            )

    raise ConvergenceError("AMISE plug-in did not converge", trace)


def _validationGrid(sample: Sample, search: SearchConfig) -> np.ndarray:
    return geometricGrid(
        search.validationLowerFactor * sample.std,
        search.validationUpperFactor * sample.std,
        search.validationGridPoints,
    )


def validationLogLikelihood(
    sample: Sample, validation: ValidationSet, h: float, floor: float = 1e-300
) -> float:
    """Sum of log f_h over the validation points, density floored at 1e-300."""
    density = KernelDensity(sample, h).pdf(validation.values)
    return float(np.sum(np.log(np.maximum(density, floor))))


def selectLikelihood(
    sample: Sample | ArrayLike,
    validation: ValidationSet | ArrayLike,
    search: SearchConfig | None = None,
) -> BandwidthResult:
    """Bandwidth maximizing the validation log-likelihood.

    Raises:
        SearchBoundaryError: If the grid maximum sits on the search boundary.
    """
    sample = Sample.of(sample)
    validation = ValidationSet.of(validation)
    search = search or _DEFAULT_SEARCH

    def negLogLik(h: float) -> float:
        return -validationLogLikelihood(sample, validation, h, search.densityFloor)

    grid = _validationGrid(sample, search)
    values = evaluateOnGrid(negLogLik, grid, search.workers)
    index = interiorOptimum(grid, values, "validation likelihood", "min")

    trace = [(float(h), float(v)) for h, v in zip(grid, values)]
    h, value = goldenSectionMinimize(
        negLogLik,
        float(grid[index - 1]),
        float(grid[index + 1]),
        search.validationRelTol,
        incumbent=(float(grid[index]), float(values[index])),
        trace=trace,
    )
    logger.info("h_lik=%.6g (log-likelihood %.6g)", h, -value)
    return BandwidthResult(
        method=BandwidthMethod.LIK,
        bandwidth=h,
        objective=-value,
        trace=[(hh, -v) for hh, v in trace],
        details={"gridPoints": int(grid.size)},
    )


def kTau(z: ArrayLike, tau: int) -> float:
    """Kolmogorov-Smirnov statistic of lag-tau PIT pairs against independent uniforms.

    tau = 0:  max_i |z_i - #{j : z_j <= z_i} / (m + 1)|
    tau > 0:  max_i |z_i z_{i+tau}
                     - #{j : z_j <= z_i, z_{j+tau} <= z_{i+tau}} / (m - tau + 1)|
              over the m - tau pairs (i, i + tau).

    Raises:
        ValueError: If tau is negative or no pair is available.
    """
    values = np.asarray(z, dtype=float)
    m = values.size
    if tau < 0:
        raise ValueError(f"Lag must be nonnegative, got {tau}")
    if tau == 0:
        if m == 0:
            raise ValueError("k_tau needs at least one value")
        counts = np.searchsorted(np.sort(values), values, side="right")
        return float(np.max(np.abs(values - counts / (m + 1))))

    pairs = m - tau
    if pairs <= 0:
        raise ValueError(f"No lag-{tau} pairs among {m} values")
    first = values[:pairs]
    second = values[tau:]
    counts = np.empty(pairs, dtype=np.int64)
    rows = max(1, (1 << 22) // pairs)
    for start in range(0, pairs, rows):
        stop = start + rows
        dominated = (first[None, :] <= first[start:stop, None]) & (
            second[None, :] <= second[start:stop, None]
        )
        counts[start:stop] = dominated.sum(axis=1)
    return float(np.max(np.abs(first * second - counts / (pairs + 1))))


def pitCriterion(pits: np.ndarray, nu: int) -> float:
    """max over 0 <= tau <= nu of sqrt(m - tau) * k_tau."""
    m = pits.size
    return max(math.sqrt(m - tau) * kTau(pits, tau) for tau in range(nu + 1))


def pitTieIndex(values: np.ndarray, index: int, tolerance: float) -> int:
    """Leftmost grid index of the run ending at `index` whose values stay within
    `tolerance` of values[index]."""
    threshold = values[index] + tolerance
    left = index
    while left > 0 and values[left - 1] <= threshold:
        left -= 1
    return left


def selectPit(
    sample: Sample | ArrayLike,
    validation: ValidationSet | ArrayLike,
    cfg: PitConfig | None = None,
    search: SearchConfig | None = None,
) -> BandwidthResult:
    """Bandwidth whose validation PITs look most like i.i.d. uniforms.

    PITs are the kernel cdf (fitted on the sample) at the validation points, in
    their stored order. The criterion is nonsmooth, so the grid optimum is kept.

    Below the oversmoothing edge the criterion only moves by single rank steps
    of size sqrt(m) / (m + 1), so grid values within cfg.tieSteps such steps of
    the minimum are ties and the least smoothing among them wins.

    Raises:
        ConfigurationError: If nu >= m.
        SearchBoundaryError: If the grid minimum, or the tied run ending at it,
            reaches the search boundary.
    """
    sample = Sample.of(sample)
    validation = ValidationSet.of(validation)
    cfg = cfg or _DEFAULT_PIT
    search = search or _DEFAULT_SEARCH
    if cfg.nu >= validation.m:
        raise ConfigurationError(f"PIT lag nu={cfg.nu} must be below m={validation.m}")

    def objective(h: float) -> float:
        pits = KernelDensity(sample, h).cdf(validation.values)
        return pitCriterion(pits, cfg.nu)

    grid = _validationGrid(sample, search)
    values = evaluateOnGrid(objective, grid, search.workers)
    argmin = interiorOptimum(grid, values, "PIT", "min")
    m = validation.m
    tolerance = cfg.tieSteps * math.sqrt(m) / (m + 1)
    index = pitTieIndex(values, argmin, tolerance)
    if index == 0:
        raise SearchBoundaryError("PIT", float(grid[0]), float(grid[0]), float(grid[-1]))

    h = float(grid[index])
    logger.info(
        "h_PIT=%.6g (criterion %.6g, grid argmin %.6g)", h, values[index], grid[argmin]
    )
    trace = [(float(hh), float(v)) for hh, v in zip(grid, values)]
    trace.append((h, float(values[index])))
    return BandwidthResult(
        method=BandwidthMethod.PIT,
        bandwidth=h,
        objective=float(values[index]),
        trace=trace,
        details={
            "nu": cfg.nu,
            "gridPoints": int(grid.size),
            "gridArgmin": float(grid[argmin]),
            "tieTolerance": tolerance,
        },
    )
