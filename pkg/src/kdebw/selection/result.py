"""Bandwidth selection results."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class BandwidthMethod(Enum):
    """Bandwidth selection criteria."""

    AMISE = "amise"  # plug-in fixed point of the AMISE minimizer
    LIK = "lik"  # validation likelihood
    PIT = "pit"  # independence and uniformity of validation PITs
    COMPLEXITY = "complexity"  # maximum complexity on (0, h_p]

    @classmethod
    def parse(cls, name: str) -> "BandwidthMethod":
        """Parse a method name; 'c' is accepted for complexity."""
        key = name.strip().lower()
        if key in ("c", "hc"):
            return cls.COMPLEXITY
        return cls(key)


@dataclass
class BandwidthResult:
    """A selected bandwidth and how it was reached.

    Attributes:
        method: Selection criterion.
        bandwidth: Selected h, positive and finite.
        objective: Final criterion value.
        trace: (iterate, objective) pairs in evaluation order; the last iterate
            is the selected bandwidth.
        details: Method-specific diagnostics (iterations, h_p, ...).
    """

    method: BandwidthMethod
    bandwidth: float
    objective: float
    trace: list[tuple[float, float]]
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise ValueError(f"Bandwidth must be positive and finite, got {self.bandwidth!r}")
        if not self.trace:
            raise ValueError("Bandwidth trace must not be empty")
        if self.trace[-1][0] != self.bandwidth:
            self.trace.append((self.bandwidth, self.objective))

    @property
    def iterations(self) -> int:
        """Number of trace entries."""
        return len(self.trace)

    def toDict(self, includeTrace: bool = False) -> dict[str, Any]:
        """Convert to dictionary."""
        data: dict[str, Any] = {
            "method": self.method.value,
            "bandwidth": self.bandwidth,
            "objective": self.objective,
            "iterations": self.iterations,
            "details": self.details,
        }
        if includeTrace:
            data["trace"] = [list(pair) for pair in self.trace]
        return data
