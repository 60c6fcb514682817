"""Atomic file output for reports, curves and samples.

Every file is written to a temporary sibling and renamed into place, so a
reader never sees a half-written report.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

from kdebw.exceptions import StorageError
from kdebw.logging.config import STORAGE_LOGGER

logger = logging.getLogger(STORAGE_LOGGER)


def writeText(path: Path, text: str) -> None:
    """Write text atomically (temp file + rename).

    Raises:
        StorageError: If the file cannot be written.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmpName = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            os.replace(tmpName, path)
        except BaseException:
            Path(tmpName).unlink(missing_ok=True)
            raise
        logger.debug(f"Saved: {path}")
    except OSError as e:
        raise StorageError(f"Failed to save {path}: {e}") from e


def dumpJson(data: dict[str, Any]) -> str:
    """Serialize a report the way it is stored on disk."""
    try:
        return json.dumps(data, indent=2, ensure_ascii=False, allow_nan=True) + "\n"
    except (TypeError, ValueError) as e:
        raise StorageError(f"Report is not JSON-serializable: {e}") from e


def saveJson(path: Path, data: dict[str, Any]) -> None:
    """Save a report as indented JSON.

    Raises:
        StorageError: If serialization or the write fails.
    """
    writeText(path, dumpJson(data))


def loadJson(path: Path) -> dict[str, Any]:
    """Load a JSON report.

    Raises:
        StorageError: If the file is missing or not valid JSON.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data: dict[str, Any] = json.load(f)
            return data
    except FileNotFoundError:
        raise StorageError(f"File not found: {path}")
    except json.JSONDecodeError as e:
        raise StorageError(f"Invalid JSON in {path}: {e}") from e


def readBytes(path: Path) -> bytes:
    """Read an input file.

    Raises:
        StorageError: If the file cannot be read.
    """
    try:
        return Path(path).read_bytes()
    except FileNotFoundError:
        raise StorageError(f"File not found: {path}")
    except OSError as e:
        raise StorageError(f"Failed to read {path}: {e}") from e
