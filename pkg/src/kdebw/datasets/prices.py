"""Daily price CSV ingestion and calendar-year slicing."""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from datetime import date
from typing import Any

import numpy as np
import pandas as pd

from kdebw.config.models import IngestConfig
from kdebw.core.sample import Sample
from kdebw.exceptions import DataIngestError, DuplicateDatesError, EmptyYearError
from kdebw.logging.config import DATASETS_LOGGER

logger = logging.getLogger(DATASETS_LOGGER)

_MISSING = {"", "null", "nan", "na", "n/a", "none"}

# Header is line 1 of the file.
_FIRST_DATA_LINE = 2


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """Daily returns stamped with the later of the two price dates.

    Attributes:
        dates: Strictly ascending calendar dates.
        returns: Finite returns, one per date.
        source: Label of the input.
        kind: "log" or "simple".
        droppedRows: Price rows dropped as missing or non-positive.
    """

    dates: list[date]
    returns: np.ndarray
    source: str = ""
    kind: str = "log"
    droppedRows: int = field(default=0)

    def __post_init__(self) -> None:
        arr = np.array(self.returns, dtype=float)
        if arr.ndim != 1 or arr.size != len(self.dates):
            raise DataIngestError(
                f"{len(self.dates)} dates but {arr.size} returns in series {self.source!r}"
            )
        if not np.all(np.isfinite(arr)):
            raise DataIngestError(f"Non-finite return in series {self.source!r}")
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise DataIngestError(f"Dates of series {self.source!r} are not strictly ascending")
        arr.setflags(write=False)
        object.__setattr__(self, "dates", list(self.dates))
        object.__setattr__(self, "returns", arr)

    def __len__(self) -> int:
        return len(self.dates)

    def years(self) -> list[int]:
        """Calendar years present, ascending."""
        return sorted({d.year for d in self.dates})

    def _yearMask(self, year: int) -> np.ndarray:
        return np.fromiter((d.year == year for d in self.dates), dtype=bool, count=len(self.dates))

    def logPrices(self, year: int | None = None) -> np.ndarray:
        """Log-price path rebuilt from the returns, starting at 0.

        Restricted to one calendar year when given; the path then has one more
        point than the year has returns.
        """
        values = self.returns if year is None else self.returns[self._yearMask(year)]
        steps = values if self.kind == "log" else np.log1p(values)
        return np.concatenate([[0.0], np.cumsum(steps)])

    def toFrame(self) -> pd.DataFrame:
        """Series as a DataFrame with columns date, return."""
        return pd.DataFrame({"date": pd.to_datetime(self.dates), "return": self.returns})

    def toDict(self) -> dict[str, Any]:
        """Summary of the series."""
        return {
            "source": self.source,
            "kind": self.kind,
            "count": len(self),
            "first": self.dates[0].isoformat() if self.dates else None,
            "last": self.dates[-1].isoformat() if self.dates else None,
            "droppedRows": self.droppedRows,
        }


def _readTable(csvBytes: bytes, columns: list[str]) -> pd.DataFrame:
    try:
        frame = pd.read_csv(
            io.BytesIO(csvBytes), dtype=str, keep_default_na=False, skipinitialspace=True
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataIngestError(f"Unreadable CSV: {e}") from e
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise DataIngestError(f"CSV header lacks column(s) {missing}; found {list(frame.columns)}")
    return frame


def _fileLine(position: int) -> int:
    return position + _FIRST_DATA_LINE


def ingestPrices(csvBytes: bytes, config: IngestConfig | None = None) -> ReturnSeries:
    """Parse a daily price CSV into a return series.

    Rows are sorted by date. Rows with a missing ("null", empty) or non-positive
    price are dropped, counted and logged. Each return is stamped with the later
    date; the first valid price produces none.

    Raises:
        DataIngestError: If a date or price cannot be parsed (with its line
            number) or fewer than 2 valid rows remain.
        DuplicateDatesError: If a date occurs more than once.
    """
    config = config or IngestConfig()
    frame = _readTable(csvBytes, [config.dateColumn, config.priceColumn])

    rawDates = frame[config.dateColumn].str.strip()
    parsedDates = pd.to_datetime(rawDates, format=config.dateFormat, errors="coerce")
    badDates = np.flatnonzero(parsedDates.isna().to_numpy())
    if badDates.size:
        first = int(badDates[0])
        raise DataIngestError(
            f"Unparseable date {rawDates.iloc[first]!r} in column {config.dateColumn!r}",
            row=_fileLine(first),
        )

    rawPrices = frame[config.priceColumn].str.strip()
    missing = rawPrices.str.lower().isin(_MISSING).to_numpy()
    prices = pd.to_numeric(rawPrices.where(~missing), errors="coerce")
    badPrices = np.flatnonzero(prices.isna().to_numpy() & ~missing)
    if badPrices.size:
        first = int(badPrices[0])
        raise DataIngestError(
            f"Unparseable price {rawPrices.iloc[first]!r} in column {config.priceColumn!r}",
            row=_fileLine(first),
        )

    duplicated = parsedDates[parsedDates.duplicated(keep=False)]
    if not duplicated.empty:
        raise DuplicateDatesError(sorted({d.strftime("%Y-%m-%d") for d in duplicated}))

    priceValues = prices.to_numpy(dtype=float)
    keep = ~missing & np.isfinite(priceValues) & (priceValues > 0)
    dropped = int((~keep).sum())
    if dropped:
        logger.warning(
            "Dropped %d of %d rows with a missing or non-positive %s",
            dropped,
            len(frame),
            config.priceColumn,
        )

    valid = pd.DataFrame({"date": parsedDates[keep].to_numpy(), "price": priceValues[keep]})
    valid = valid.sort_values("date", kind="mergesort").reset_index(drop=True)
    if len(valid) < 2:
        raise DataIngestError(f"Need at least 2 valid price rows, got {len(valid)}")

    ratio = valid["price"].to_numpy()[1:] / valid["price"].to_numpy()[:-1]
    returns = np.log(ratio) if config.returnKind == "log" else ratio - 1.0
    dates = [ts.date() for ts in valid["date"].iloc[1:]]
    logger.info("Ingested %d returns from %s to %s", len(dates), dates[0], dates[-1])
    return ReturnSeries(
        dates=dates,
        returns=returns,
        source=config.source,
        kind=config.returnKind,
        droppedRows=dropped,
    )


def sliceByYear(rs: ReturnSeries, year: int) -> Sample:
    """Returns dated in one calendar year, in date order.

    Raises:
        EmptyYearError: If the year holds no return.
    """
    mask = rs._yearMask(year)
    if not mask.any():
        raise EmptyYearError(year)
    return Sample(rs.returns[mask])
