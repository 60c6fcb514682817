"""One-dimensional search helpers shared by the bandwidth selectors.

Bandwidths are searched on geometric grids, so the refinements below work on
log(h): a relative tolerance on h becomes an absolute one on log(h).
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Literal

import numpy as np

from kdebw.exceptions import SearchBoundaryError
from kdebw.logging.config import SELECTION_LOGGER

logger = logging.getLogger(SELECTION_LOGGER)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

Objective = Callable[[float], float]
Trace = list[tuple[float, float]]


def geometricGrid(lower: float, upper: float, points: int) -> np.ndarray:
    """Geometric grid with exact endpoints."""
    if not (0 < lower < upper):
        raise ValueError(f"Need 0 < lower < upper, got [{lower!r}, {upper!r}]")
    return np.geomspace(lower, upper, points)


def evaluateOnGrid(objective: Objective, grid: np.ndarray, workers: int = 1) -> np.ndarray:
    """Evaluate an objective at every grid point.

    Results are returned in grid order whatever the number of workers.
    """
    if workers <= 1 or grid.size <= 1:
        return np.array([objective(float(h)) for h in grid])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.array(list(pool.map(objective, (float(h) for h in grid))))


def interiorOptimum(
    grid: np.ndarray,
    values: np.ndarray,
    criterion: str,
    mode: Literal["min", "max"],
) -> int:
    """Index of the grid optimum, which must not sit on either end.

    Raises:
        SearchBoundaryError: If the optimum is the first or last grid point.
    """
    index = int(np.argmin(values) if mode == "min" else np.argmax(values))
    if index == 0 or index == grid.size - 1:
        raise SearchBoundaryError(criterion, float(grid[index]), float(grid[0]), float(grid[-1]))
    return index


def goldenSectionMinimize(
    objective: Objective,
    lower: float,
    upper: float,
    relTol: float,
    incumbent: tuple[float, float] | None = None,
    trace: Trace | None = None,
) -> tuple[float, float]:
    """Golden-section search for a minimum of a unimodal objective in [lower, upper].

    Args:
        objective: Function of h to minimize.
        lower: Left end of the bracket (h > 0).
        upper: Right end of the bracket.
        relTol: Stop once upper / lower < 1 + relTol.
        incumbent: Best known (h, value), returned if nothing better is found.
        trace: Optional list receiving every (h, value) evaluated.

    Returns:
        (h, value) of the best point evaluated.
    """
    a, b = math.log(min(lower, upper)), math.log(max(lower, upper))
    width = b - a
    logTol = math.log1p(relTol)
    best = incumbent if incumbent is not None else (math.nan, math.inf)

    def evaluate(logH: float) -> float:
        nonlocal best
        h = math.exp(logH)
        value = objective(h)
        if trace is not None:
            trace.append((h, value))
        if value < best[1]:
            best = (h, value)
        return value

    if width <= logTol:
        evaluate(0.5 * (a + b))
        return best

    steps = int(math.ceil(math.log(logTol / width) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * width
    d = a + INV_PHI * width
    yc = evaluate(c)
    yd = evaluate(d)

    for _ in range(steps - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            width = INV_PHI * width
            c = a + INV_PHI_SQUARE * width
            yc = evaluate(c)
        else:
            a = c
            c = d
            yc = yd
            width = INV_PHI * width
            d = a + INV_PHI * width
            yd = evaluate(d)

    logger.debug("golden section converged to h=%.6g (%d steps)", best[0], steps)
    return best


def ternarySearchMaximize(
    objective: Objective,
    lower: float,
    upper: float,
    relTol: float,
    incumbent: tuple[float, float] | None = None,
    trace: Trace | None = None,
    maxIter: int = 200,
) -> tuple[float, float]:
    """Ternary search for a maximum of a unimodal objective in [lower, upper].

    Returns:
        (h, value) of the best point evaluated, never worse than the incumbent.
    """
    a, b = math.log(min(lower, upper)), math.log(max(lower, upper))
    logTol = math.log1p(relTol)
    best = incumbent if incumbent is not None else (math.nan, -math.inf)

    def evaluate(logH: float) -> float:
        nonlocal best
        h = math.exp(logH)
        value = objective(h)
        if trace is not None:
            trace.append((h, value))
        if value > best[1]:
            best = (h, value)
        return value

    for _ in range(maxIter):
        if b - a <= logTol:
            break
        third = (b - a) / 3.0
        left, right = a + third, b - third
        if evaluate(left) < evaluate(right):
            a = left
        else:
            b = right

    return best
