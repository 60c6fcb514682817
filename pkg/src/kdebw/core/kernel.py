"""Kernel specification and constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate
from scipy.special import ndtr

from kdebw.exceptions import UnsupportedKernelError

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


class KernelKind(Enum):
    """Kernel families. Only GAUSSIAN is evaluated."""

    GAUSSIAN = "gaussian"
    EPANECHNIKOV = "epanechnikov"


@dataclass(frozen=True)
class KernelSpec:
    """A kernel and the constants the AMISE formula needs.

    Attributes:
        kind: Kernel family.
        roughness: Integral of K squared.
        secondMoment: Integral of x^2 K(x).
    """

    kind: KernelKind
    roughness: float
    secondMoment: float

    def __post_init__(self) -> None:
        if self.kind is not KernelKind.GAUSSIAN:
            raise UnsupportedKernelError(self.kind.value)
        if not (self.roughness > 0 and self.secondMoment > 0):
            raise ValueError("Kernel roughness and second moment must be positive")

    @classmethod
    def forKind(cls, kind: KernelKind | str) -> "KernelSpec":
        """Build the spec of a kernel family."""
        kind = KernelKind(kind)
        if kind is not KernelKind.GAUSSIAN:
            raise UnsupportedKernelError(kind.value)
        return cls(kind=kind, roughness=0.5 / math.sqrt(math.pi), secondMoment=1.0)

    def pdf(self, z: np.ndarray) -> np.ndarray:
        """Kernel density K(z)."""
        return _INV_SQRT_2PI * np.exp(-0.5 * np.square(z))

    def cdf(self, z: np.ndarray) -> np.ndarray:
        """Kernel distribution function, the integral of K up to z."""
        return ndtr(z)

    def checkNormalization(self, tol: float = 1e-9) -> float:
        """Integrate K over the reals and check it equals one.

        Returns:
            The computed integral.

        Raises:
            ValueError: If the integral deviates from one by more than tol.
        """
        total, _ = integrate.quad(
            lambda z: float(self.pdf(np.asarray(z))), -np.inf, np.inf, epsabs=1e-13
        )
        if abs(total - 1.0) > tol:
            raise ValueError(f"Kernel integrates to {total!r}, not 1")
        return total


GAUSSIAN_KERNEL = KernelSpec.forKind(KernelKind.GAUSSIAN)
