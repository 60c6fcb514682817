"""Observation containers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from numpy.typing import ArrayLike

from kdebw.exceptions import DegenerateSampleError, InvalidSampleError


def asFiniteArray(values: ArrayLike, minSize: int = 1, label: str = "sample") -> np.ndarray:
    """Validate observations and return them as a read-only float array.

    Raises:
        InvalidSampleError: If the data is not one-dimensional, too short,
            or holds NaN/infinite values.
    """
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise InvalidSampleError(f"{label} must be one-dimensional, got shape {arr.shape}")
    if arr.size < minSize:
        raise InvalidSampleError(f"{label} needs at least {minSize} values, got {arr.size}")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise InvalidSampleError(
            f"{label} holds {bad.size} non-finite values (first at index {int(bad[0])})"
        )
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Sample:
    """Ordered real observations X_1..X_n.

    Invariants: n >= 2, all values finite, positive standard deviation.

    Attributes:
        values: The observations, in their given order.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = asFiniteArray(self.values, minSize=2)
        if not np.std(arr) > 0:
            raise DegenerateSampleError(arr.size)
        object.__setattr__(self, "values", arr)

    @classmethod
    def of(cls, values: "Sample | ArrayLike") -> "Sample":
        """Return values as a Sample, reusing an existing instance."""
        if isinstance(values, Sample):
            return values
        return cls(np.asarray(values, dtype=float))

    @property
    def n(self) -> int:
        """Number of observations."""
        return int(self.values.size)

    @property
    def mean(self) -> float:
        """Arithmetic mean."""
        return float(np.mean(self.values))

    @property
    def std(self) -> float:
        """Maximum-likelihood standard deviation (divisor n)."""
        return float(np.std(self.values))

    @property
    def spread(self) -> float:
        """max - min."""
        return float(np.ptp(self.values))

    def __len__(self) -> int:
        return self.n

    def scaled(self, factor: float, shift: float = 0.0) -> "Sample":
        """Affine image factor * X + shift."""
        return Sample(self.values * factor + shift)

    def toDict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {"n": self.n, "mean": self.mean, "std": self.std}


@dataclass(frozen=True, eq=False)
class ValidationSet:
    """Held-out observations X_{n+1}..X_{n+m} in their stored order.

    Attributes:
        values: Validation observations, m >= 2, all finite.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", asFiniteArray(self.values, minSize=2, label="validation set")
        )

    @classmethod
    def of(cls, values: "ValidationSet | Sequence[float] | ArrayLike") -> "ValidationSet":
        """Return values as a ValidationSet, reusing an existing instance."""
        if isinstance(values, ValidationSet):
            return values
        return cls(np.asarray(values, dtype=float))

    @property
    def m(self) -> int:
        """Number of validation observations."""
        return int(self.values.size)

    def __len__(self) -> int:
        return self.m
