"""Sample and return-series CSV files.

Floats are printed with 17 significant digits, which round-trips every double.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from kdebw import storage
from kdebw.config.models import IngestConfig
from kdebw.core.sample import asFiniteArray
from kdebw.datasets.prices import ReturnSeries
from kdebw.exceptions import DataIngestError

FLOAT_FORMAT = "%.17g"

_VALUE_COLUMNS = ("value", "return")
_RETURN_KINDS = ("log", "simple")


def sampleCsvText(values: ArrayLike) -> str:
    """One-column CSV (header "value")."""
    frame = pd.DataFrame({"value": asFiniteArray(values)})
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def seriesCsvText(series: ReturnSeries) -> str:
    """CSV with header "date,return,kind", ISO dates, the return kind on every row."""
    frame = pd.DataFrame(
        {
            "date": [d.isoformat() for d in series.dates],
            "return": series.returns,
            "kind": series.kind,
        }
    )
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def writeSeriesCsv(path: Path, data: ReturnSeries | ArrayLike) -> None:
    """Write a return series or a bare sample atomically."""
    text = seriesCsvText(data) if isinstance(data, ReturnSeries) else sampleCsvText(data)
    storage.writeText(path, text)


def _readFrame(csvBytes: bytes) -> pd.DataFrame:
    try:
        return pd.read_csv(io.BytesIO(csvBytes), float_precision="round_trip")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataIngestError(f"Unreadable CSV: {e}") from e


def readSampleCsv(csvBytes: bytes) -> np.ndarray:
    """Values of a sample CSV, in file order.

    Reads the "value" or "return" column, or the only column of a one-column file.

    Raises:
        DataIngestError: If no value column is found or a value is not a finite number.
    """
    frame = _readFrame(csvBytes)
    column = next((c for c in _VALUE_COLUMNS if c in frame.columns), None)
    if column is None:
        if len(frame.columns) != 1:
            raise DataIngestError(
                f"Sample CSV needs a 'value' or 'return' column; found {list(frame.columns)}"
            )
        column = frame.columns[0]

    values = pd.to_numeric(frame[column], errors="coerce").to_numpy(dtype=float)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise DataIngestError(
            f"Non-numeric value {frame[column].iloc[int(bad[0])]!r}", row=int(bad[0]) + 2
        )
    return values


def readSeriesCsv(csvBytes: bytes, source: str = "") -> ReturnSeries:
    """Re-read a series written by writeSeriesCsv.

    A file without a "kind" column holds log returns.

    Raises:
        DataIngestError: On a missing column, a bad date, or a kind other than
            a single "log" or "simple".
    """
    frame = _readFrame(csvBytes)
    if not {"date", "return"} <= set(frame.columns):
        raise DataIngestError(f"Series CSV needs 'date' and 'return'; found {list(frame.columns)}")
    dates = pd.to_datetime(frame["date"], format=IngestConfig().dateFormat, errors="coerce")
    if dates.isna().any():
        row = int(np.flatnonzero(dates.isna().to_numpy())[0])
        raise DataIngestError(f"Unparseable date {frame['date'].iloc[row]!r}", row=row + 2)
    kinds = set(frame["kind"].astype(str)) if "kind" in frame.columns else set()
    kinds = kinds or {"log"}
    if len(kinds) != 1 or not kinds <= set(_RETURN_KINDS):
        raise DataIngestError(
            f"Series CSV needs one return kind of {_RETURN_KINDS}, got {sorted(kinds)}"
        )
    return ReturnSeries(
        dates=[ts.date() for ts in dates],
        returns=frame["return"].to_numpy(dtype=float),
        source=source,
        kind=kinds.pop(),
    )
