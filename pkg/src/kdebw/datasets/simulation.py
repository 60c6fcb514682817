"""Simulated return samples with known densities."""

from __future__ import annotations

from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from kdebw.core.sample import Sample

MIXTURE_WEIGHT = 0.6
MIXTURE_SHIFT = 1.25
STUDENT_DOF = 5


class Distribution(str, Enum):
    """Simulated distributions."""

    GAUSSIAN = "gaussian"
    MIXTURE = "mixture"
    STUDENT5 = "student5"


class SimSpec(BaseModel):
    """A reproducible simulated sample.

    Attributes:
        dist: Distribution to draw from.
        n: Sample size.
        seed: Generator seed.
    """

    model_config = ConfigDict(frozen=True)

    dist: Distribution = Distribution.GAUSSIAN
    n: int = Field(default=1000, ge=2)
    seed: int = 0


def _draw(dist: Distribution, n: int, rng: np.random.Generator) -> np.ndarray:
    if dist is Distribution.GAUSSIAN:
        return rng.standard_normal(n)
    if dist is Distribution.MIXTURE:
        left = rng.random(n) < MIXTURE_WEIGHT
        return rng.standard_normal(n) + np.where(left, -MIXTURE_SHIFT, MIXTURE_SHIFT)
    z = rng.standard_normal(n)
    return z / np.sqrt(rng.chisquare(STUDENT_DOF, n) / STUDENT_DOF)


def simulate(spec: SimSpec) -> Sample:
    """Draw spec.n values; the same spec always gives the same sample.

    mixture: N(-1.25, 1) with probability 0.6, else N(1.25, 1).
    student5: Z / sqrt(chi2_5 / 5).
    """
    return Sample(_draw(spec.dist, spec.n, np.random.default_rng(spec.seed)))


def simulatePair(spec: SimSpec, m: int) -> tuple[Sample, Sample]:
    """Training sample of spec.n values and an independent validation draw of m values."""
    rng = np.random.default_rng(spec.seed)
    train = _draw(spec.dist, spec.n, rng)
    return Sample(train), Sample(_draw(spec.dist, m, rng))


def truePdf(spec: SimSpec, x: float | ArrayLike) -> Any:
    """Analytic density of spec.dist; float for scalar x, array otherwise."""
    arr = np.asarray(x, dtype=float)
    if spec.dist is Distribution.GAUSSIAN:
        values = stats.norm.pdf(arr)
    elif spec.dist is Distribution.MIXTURE:
        values = MIXTURE_WEIGHT * stats.norm.pdf(arr + MIXTURE_SHIFT) + (
            1 - MIXTURE_WEIGHT
        ) * stats.norm.pdf(arr - MIXTURE_SHIFT)
    else:
        values = stats.t.pdf(arr, STUDENT_DOF)
    return float(values) if arr.ndim == 0 else np.asarray(values)


class TrueDensity:
    """truePdf bound to a spec, usable wherever a density object is expected."""

    def __init__(self, spec: SimSpec):
        self.spec = spec

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(truePdf(self.spec, np.asarray(x, dtype=float)))
