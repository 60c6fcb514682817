"""Simulated samples and daily price data."""

from kdebw.datasets.csvio import (
    readSampleCsv,
    readSeriesCsv,
    sampleCsvText,
    seriesCsvText,
    writeSeriesCsv,
)
from kdebw.datasets.prices import ReturnSeries, ingestPrices, sliceByYear
from kdebw.datasets.simulation import (
    Distribution,
    SimSpec,
    TrueDensity,
    simulate,
    simulatePair,
    truePdf,
)

__all__ = [
    "Distribution",
    "SimSpec",
    "simulate",
    "simulatePair",
    "truePdf",
    "TrueDensity",
    "ReturnSeries",
    "ingestPrices",
    "sliceByYear",
    "sampleCsvText",
    "seriesCsvText",
    "writeSeriesCsv",
    "readSampleCsv",
    "readSeriesCsv",
]
