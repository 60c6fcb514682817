"""Sign-based market-efficiency statistics.

Returns are reduced to signs (1 positive, 0 negative). With one lag, the market
information in bits is

    I = -sum_i p_i log2(p_i / 2)
        + sum_i [p_i pi_i log2(p_i pi_i) + p_i (1 - pi_i) log2(p_i (1 - pi_i))]

with p_i the probability of sign i and pi_i the probability of a positive
return after sign i. It is zero when pi_1 = pi_0 = 1/2.

Kernel version: each return X carries positive mass Kc(X / h) (a zero return
splits 1/2 - 1/2), and consecutive pairs carry the product of their masses,
i.e. the quadrant masses of a 2-D product-Gaussian kernel estimate. As h -> 0
this reduces to counting transitions.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import ndtr, xlogy

from kdebw.core.density import KernelDensity
from kdebw.core.sample import Sample, asFiniteArray
from kdebw.exceptions import ConfigurationError, InvalidSampleError, UndefinedProbabilityError
from kdebw.logging.config import EFFICIENCY_LOGGER

logger = logging.getLogger(EFFICIENCY_LOGGER)

_LN2 = math.log(2.0)
_MIN_MARGINAL = 1e-12

NULL_LEVELS = (0.95, 0.99, 0.999)


@dataclass(frozen=True)
class MarketInfoResult:
    """Market information at one bandwidth.

    Attributes:
        bandwidth: Kernel bandwidth h (0 for the counting limit).
        pPos: Probability of a positive return, p_1.
        pNeg: Probability of a negative return, p_0.
        piPos: P(positive | previous positive), pi_1.
        piNeg: P(positive | previous negative), pi_0.
        infoBits: Market information I_h in bits.
        lagLength: Length L of the conditioning sequence (always 1).
    """

    bandwidth: float
    pPos: float
    pNeg: float
    piPos: float
    piNeg: float
    infoBits: float
    lagLength: int = 1

    def toDict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "bandwidth": self.bandwidth,
            "pPos": self.pPos,
            "pNeg": self.pNeg,
            "piPos": self.piPos,
            "piNeg": self.piNeg,
            "infoBits": self.infoBits,
            "lagLength": self.lagLength,
        }


@dataclass(frozen=True)
class NullBands:
    """Quantiles of the market information of i.i.d. fair signs.

    Attributes:
        n: Series length.
        quantiles: Probability level -> information quantile (bits).
        trials: Monte Carlo trials.
        seed: Base seed; trial t uses the stream seeded by (seed, t).
    """

    n: int
    quantiles: dict[float, float]
    trials: int
    seed: int

    def band(self, level: float) -> float:
        """Quantile at a probability level."""
        return self.quantiles[level]

    def toDict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "quantiles": {f"{level:g}": value for level, value in self.quantiles.items()},
        }


def probPositive(kd: KernelDensity) -> float:
    """Probability of a positive return under the kernel estimate, 1 - F_h(0)."""
    return float(np.mean(ndtr(kd.points / kd.bandwidth)))


def _informationBits(
    pPos: np.ndarray,
    pNeg: np.ndarray,
    posPos: np.ndarray,
    posNeg: np.ndarray,
    negPos: np.ndarray,
    negNeg: np.ndarray,
) -> np.ndarray:
    """Market information from the marginal and joint sign masses.

    p_i pi_i and p_i (1 - pi_i) are the joint masses themselves, so no
    conditional probability has to be formed here.
    """
    marginal = -(xlogy(pPos, pPos / 2.0) + xlogy(pNeg, pNeg / 2.0))
    joint = xlogy(posPos, posPos) + xlogy(posNeg, posNeg) + xlogy(negPos, negPos) + xlogy(
        negNeg, negNeg
    )
    return np.asarray((marginal + joint) / _LN2)


def _fromPositiveMasses(positive: np.ndarray, bandwidth: float) -> MarketInfoResult:
    first = positive[:-1]
    second = positive[1:]
    posPos = float(np.mean(first * second))
    posNeg = float(np.mean(first * (1.0 - second)))
    negPos = float(np.mean((1.0 - first) * second))
    negNeg = float(np.mean((1.0 - first) * (1.0 - second)))
    pPos = posPos + posNeg
    pNeg = negPos + negNeg
    if pPos < _MIN_MARGINAL:
        raise UndefinedProbabilityError("p_1", pPos)
    if pNeg < _MIN_MARGINAL:
        raise UndefinedProbabilityError("p_0", pNeg)

    info = float(
        _informationBits(
            np.asarray(pPos),
            np.asarray(pNeg),
            np.asarray(posPos),
            np.asarray(posNeg),
            np.asarray(negPos),
            np.asarray(negNeg),
        )
    )
    return MarketInfoResult(
        bandwidth=bandwidth,
        pPos=pPos,
        pNeg=pNeg,
        piPos=posPos / pPos,
        piNeg=negPos / pNeg,
        infoBits=info,
    )


def marketInformation(sample: Sample | ArrayLike, h: float) -> MarketInfoResult:
    """Kernel-estimated market information with one lag.

    Args:
        sample: Returns in time order (at least 3).
        h: Bandwidth, shared by both coordinates of the pair kernel.

    Raises:
        UndefinedProbabilityError: If p_1 or p_0 is below 1e-12.
    """
    values = sample.values if isinstance(sample, Sample) else asFiniteArray(sample, minSize=3)
    if values.size < 3:
        raise InvalidSampleError("Market information needs at least 3 returns")
    if not (math.isfinite(h) and h > 0):
        raise ValueError(f"Bandwidth must be positive and finite, got {h!r}")
    return _fromPositiveMasses(ndtr(values / h), float(h))


def _signMasses(values: np.ndarray) -> np.ndarray:
    return np.where(values > 0, 1.0, np.where(values < 0, 0.0, 0.5))


def marketInformationFromSigns(values: ArrayLike) -> MarketInfoResult:
    """Counting (h -> 0) market information from transition frequencies.

    A zero return counts half positive, half negative.
    """
    arr = asFiniteArray(values, minSize=3)
    return _fromPositiveMasses(_signMasses(arr), 0.0)


def nullBands(
    n: int,
    trials: int = 10_000,
    seed: int = 0,
    levels: tuple[float, ...] = NULL_LEVELS,
) -> NullBands:
    """Monte Carlo quantiles of the counting market information under fair i.i.d. signs.

    Each trial draws its signs from its own stream seeded by (seed, trial), so the
    bands do not depend on evaluation order.

    Args:
        n: Series length (>= 3).
        trials: Number of simulated series (>= 1000).
        seed: Base seed.
        levels: Probability levels of the reported quantiles.
    """
    if n < 3:
        raise ConfigurationError(f"Null bands need n >= 3, got {n}")
    if trials < 1000:
        raise ConfigurationError(f"Null bands need at least 1000 trials, got {trials}")

    signs = np.empty((trials, n))
    for trial in range(trials):
        signs[trial] = np.random.default_rng([seed, trial]).integers(0, 2, size=n)

    first = signs[:, :-1]
    second = signs[:, 1:]
    posPos = np.mean(first * second, axis=1)
    posNeg = np.mean(first * (1.0 - second), axis=1)
    negPos = np.mean((1.0 - first) * second, axis=1)
    negNeg = np.mean((1.0 - first) * (1.0 - second), axis=1)
    info = _informationBits(posPos + posNeg, negPos + negNeg, posPos, posNeg, negPos, negNeg)

    values = np.quantile(info, levels)
    logger.debug("null bands n=%d trials=%d: %s", n, trials, values)
    return NullBands(
        n=n,
        quantiles={float(level): float(v) for level, v in zip(levels, values)},
        trials=trials,
        seed=seed,
    )
