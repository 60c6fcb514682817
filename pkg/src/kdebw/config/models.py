"""Parameter models for the numerical routines.

Each routine takes its parameters as one immutable model so that a run can be
snapshotted into a manifest and replayed exactly.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class QuadratureConfig(BaseModel):
    """Composite trapezoid rule on a uniform grid.

    The default window is [center - windowScale*scale, center + windowScale*scale],
    where callers pass scale = sigma + h. Explicit bounds override the window.

    Attributes:
        points: Number of grid points (odd counts keep the center on the grid).
        windowScale: Half-width of the window in units of the scale argument.
        lower: Optional fixed lower bound.
        upper: Optional fixed upper bound.
    """

    model_config = ConfigDict(frozen=True)

    points: int = Field(default=4001, ge=3, description="Trapezoid grid size")
    windowScale: float = Field(default=10.0, gt=0, description="Half-width multiplier")
    lower: float | None = Field(default=None, description="Fixed lower bound")
    upper: float | None = Field(default=None, description="Fixed upper bound")

    @model_validator(mode="after")
    def _checkBounds(self) -> "QuadratureConfig":
        if self.lower is not None and self.upper is not None and self.lower >= self.upper:
            raise ValueError(f"lower={self.lower} must be below upper={self.upper}")
        return self

    def window(self, center: float, scale: float) -> tuple[float, float]:
        """Integration window around a center."""
        halfWidth = self.windowScale * scale
        lower = self.lower if self.lower is not None else center - halfWidth
        upper = self.upper if self.upper is not None else center + halfWidth
        return lower, upper

    def grid(self, center: float, scale: float) -> np.ndarray:
        """Uniform evaluation grid over the window."""
        lower, upper = self.window(center, scale)
        return np.linspace(lower, upper, self.points)

    def gridOn(self, lower: float, upper: float) -> np.ndarray:
        """Uniform evaluation grid over an explicit interval."""
        return np.linspace(lower, upper, self.points)


class SearchConfig(BaseModel):
    """Grids, tolerances and parallelism for every bandwidth search.

    Bounds are expressed relative to the sample: sigma is the maximum-likelihood
    standard deviation and range is max - min.
    """

    model_config = ConfigDict(frozen=True)

    # h_p: argmin of the cumulative Kullback-Leibler divergence
    hpGridPoints: int = Field(default=200, ge=5)
    hpLowerFactor: float = Field(default=1e-3, gt=0, description="x sigma")
    hpUpperRangeFactor: float = Field(default=2.0, gt=0, description="x (max - min)")
    hpRelTol: float = Field(default=1e-4, gt=0)

    # complexity curve on (0, h_p]
    curvePoints: int = Field(default=500, ge=5)
    curveMinFactor: float = Field(default=1e-3, gt=0, description="x sigma")
    extendPoints: int = Field(default=50, ge=0, description="flagged points beyond h_p")
    extendFactor: float = Field(default=1.5, gt=1.0, description="x h_p")
    hcRelTol: float = Field(default=1e-3, gt=0)

    # validation-based selectors (likelihood, PIT)
    validationGridPoints: int = Field(default=200, ge=5)
    validationLowerFactor: float = Field(default=1e-3, gt=0, description="x sigma")
    validationUpperFactor: float = Field(default=5.0, gt=0, description="x sigma")
    validationRelTol: float = Field(default=1e-4, gt=0)
    densityFloor: float = Field(default=1e-300, gt=0)

    # AMISE plug-in fixed point
    amiseTol: float = Field(default=1e-5, gt=0, description="x sigma")
    amiseMaxIter: int = Field(default=200, ge=1)

    workers: int = Field(default=1, ge=1, description="threads for grid evaluation")
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)


class PitConfig(BaseModel):
    """PIT-based selector parameters.

    Attributes:
        nu: Largest lag whose pair independence enters the criterion.
        tieSteps: Criterion values within tieSteps rank steps, sqrt(m) / (m + 1)
            each, of the grid minimum count as ties; the smallest bandwidth of the
            tied run ending at the minimum is selected. 0 keeps the plain argmin.
    """

    model_config = ConfigDict(frozen=True)

    nu: int = Field(default=22, ge=0)
    tieSteps: float = Field(default=1.0, ge=0)


class HurstConfig(BaseModel):
    """Rescaled-range estimator parameters.

    Attributes:
        minWindow: Smallest window on the ladder.
        maxWindowDivisor: Largest window is len(increments) // maxWindowDivisor.
        rungs: Number of geometric rungs (duplicates after rounding are merged).
        minLength: Minimum number of log-prices.
        correction: "anis-lloyd" subtracts the expected R/S of i.i.d. noise per
            window size before fitting and adds back 0.5; "none" is the raw slope.
    """

    model_config = ConfigDict(frozen=True)

    minWindow: int = Field(default=8, ge=2)
    maxWindowDivisor: int = Field(default=4, ge=1)
    rungs: int = Field(default=20, ge=2)
    minLength: int = Field(default=64, ge=8)
    correction: Literal["anis-lloyd", "none"] = "anis-lloyd"


class IngestConfig(BaseModel):
    """Price CSV layout and return convention."""

    model_config = ConfigDict(frozen=True)

    dateColumn: str = "Date"
    priceColumn: str = "Close"
    dateFormat: str = "%Y-%m-%d"
    returnKind: Literal["log", "simple"] = "log"
    source: str = ""
