"""Divergence and complexity statistics of a density estimate.

Integrals use the composite trapezoid rule of QuadratureConfig.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import trapezoid
from scipy.special import xlogy

from kdebw.config.models import QuadratureConfig
from kdebw.core.density import KernelDensity
from kdebw.divergence.gaussianFit import GaussianFit
from kdebw.exceptions import QuadratureError

_CDF_FLOOR = 1e-300

_DEFAULT_QUADRATURE = QuadratureConfig()

Interval = tuple[float, float]


class DensityLike(Protocol):
    """Anything with a vectorised pdf."""

    def pdf(self, x: np.ndarray) -> ArrayLike: ...


class DistributionLike(Protocol):
    """Anything with a vectorised cdf."""

    def cdf(self, x: np.ndarray) -> ArrayLike: ...


def _checkInterval(support: Interval) -> tuple[float, float]:
    a, b = float(support[0]), float(support[1])
    if not (np.isfinite(a) and np.isfinite(b) and b > a):
        raise ValueError(f"Support must be a finite interval with b > a, got {support!r}")
    return a, b


def densitySupport(kd: KernelDensity, margin: float = 10.0) -> Interval:
    """[min - margin*h, max + margin*h], which carries all but a negligible mass."""
    points = kd.points
    pad = margin * kd.bandwidth
    return float(points.min()) - pad, float(points.max()) + pad


def ksVsEmpirical(kd: KernelDensity) -> float:
    """Kolmogorov-Smirnov distance between the kernel cdf and the empirical cdf.

    The supremum over the reals is attained at the observations, from the left or
    from the right, so both the <= and < counts are checked at every X_j.
    """
    ordered = np.sort(kd.points)
    n = ordered.size
    fitted = kd.cdf(ordered)
    atOrBelow = np.searchsorted(ordered, ordered, side="right") / n
    below = np.searchsorted(ordered, ordered, side="left") / n
    return float(max(np.max(np.abs(fitted - atOrBelow)), np.max(np.abs(fitted - below))))


def cumulativeKl(
    dist: DistributionLike,
    reference: GaussianFit,
    quad: QuadratureConfig | None = None,
) -> float:
    """Cumulative Kullback-Leibler divergence  int F log(F / G) dx.

    No (G - F) correction term is added, so the value is not guaranteed to be
    nonnegative and is returned unclamped. The integrand is 0 where F = 0; G is
    floored at 1e-300.

    Args:
        dist: Distribution F (usually a KernelDensity).
        reference: Fitted Gaussian G.
        quad: Quadrature grid; the window is centred on the Gaussian mean with
            scale std + h.

    Raises:
        QuadratureError: If the integrand is not finite.
    """
    quad = quad or _DEFAULT_QUADRATURE
    bandwidth = float(getattr(dist, "bandwidth", 0.0))
    x = quad.grid(reference.mean, reference.std + bandwidth)
    fitted = np.asarray(dist.cdf(x), dtype=float)
    logRef = np.log(np.maximum(reference.cdf(x), _CDF_FLOOR))
    positive = fitted > 0
    logFitted = np.log(np.where(positive, fitted, 1.0))
    integrand = np.where(positive, fitted * (logFitted - logRef), 0.0)
    if not np.all(np.isfinite(integrand)):
        raise QuadratureError("Cumulative Kullback-Leibler integrand is not finite")
    return float(trapezoid(integrand, x))


def shannonEntropy(
    density: DensityLike,
    support: Interval,
    quad: QuadratureConfig | None = None,
) -> float:
    """Differential entropy  -int g log g  over the support, with 0 log 0 = 0."""
    a, b = _checkInterval(support)
    x = (quad or _DEFAULT_QUADRATURE).gridOn(a, b)
    g = np.asarray(density.pdf(x), dtype=float)
    return float(-trapezoid(xlogy(g, g), x))


def euclideanDivergenceFromUniform(
    density: DensityLike,
    support: Interval,
    quad: QuadratureConfig | None = None,
) -> float:
    """Squared L2 distance  int (g - 1/(b-a))^2  from the uniform density on [a, b]."""
    a, b = _checkInterval(support)
    x = (quad or _DEFAULT_QUADRATURE).gridOn(a, b)
    g = np.asarray(density.pdf(x), dtype=float)
    return float(trapezoid(np.square(g - 1.0 / (b - a)), x))


def lmcComplexity(
    density: DensityLike,
    support: Interval,
    quad: QuadratureConfig | None = None,
) -> float:
    """LMC complexity: entropy times the Euclidean divergence from uniform."""
    return shannonEntropy(density, support, quad) * euclideanDivergenceFromUniform(
        density, support, quad
    )


def integratedSquaredError(
    density: DensityLike,
    reference: DensityLike,
    support: Interval,
    quad: QuadratureConfig | None = None,
) -> float:
    """int (f - g)^2 over the support."""
    a, b = _checkInterval(support)
    x = (quad or _DEFAULT_QUADRATURE).gridOn(a, b)
    diff = np.asarray(density.pdf(x), dtype=float) - np.asarray(reference.pdf(x), dtype=float)
    return float(trapezoid(diff * diff, x))
