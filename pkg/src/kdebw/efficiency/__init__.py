"""Market-efficiency statistics."""

from kdebw.efficiency.hurst import (
    HurstResult,
    expectedRescaledRange,
    hurstExponent,
    simulateFbm,
)
from kdebw.efficiency.marketInfo import (
    NULL_LEVELS,
    MarketInfoResult,
    NullBands,
    marketInformation,
    marketInformationFromSigns,
    nullBands,
    probPositive,
)

__all__ = [
    "probPositive",
    "MarketInfoResult",
    "marketInformation",
    "marketInformationFromSigns",
    "NullBands",
    "NULL_LEVELS",
    "nullBands",
    "HurstResult",
    "hurstExponent",
    "expectedRescaledRange",
    "simulateFbm",
]
