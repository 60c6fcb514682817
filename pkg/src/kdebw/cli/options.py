"""Flag parsing, settings resolution and input/output plumbing for the commands."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError

from kdebw import storage
from kdebw.cli.manifest import RunManifest
from kdebw.config.settings import Settings, loadSettings
from kdebw.core.sample import Sample, ValidationSet
from kdebw.datasets import ingestPrices, readSampleCsv, sliceByYear
from kdebw.exceptions import ConfigurationError
from kdebw.logging import setLogLevel
from kdebw.logging.config import CLI_LOGGER
from kdebw.selection.result import BandwidthMethod

logger = logging.getLogger(CLI_LOGGER)

GridSpec = tuple[float, float, int]


def parseGrid(text: str) -> GridSpec:
    """argparse type for LO:HI:N."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected LO:HI:N, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI:N with numbers, got {text!r}")
    if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo and n >= 2):
        raise argparse.ArgumentTypeError(f"need LO < HI and N >= 2, got {text!r}")
    return lo, hi, n


def parseMethods(text: str) -> list[BandwidthMethod]:
    """argparse type for a comma-separated method list such as c,amise,pit,lik."""
    methods: list[BandwidthMethod] = []
    for name in filter(None, (part.strip() for part in text.split(","))):
        try:
            method = BandwidthMethod.parse(name)
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"unknown method {name!r} (choose from c, amise, pit, lik)"
            )
        if method not in methods:
            methods.append(method)
    if not methods:
        raise argparse.ArgumentTypeError("no method given")
    return methods


def parseNames(choices: tuple[str, ...]) -> Any:
    """argparse type factory for a comma-separated subset of choices."""

    def parse(text: str) -> list[str]:
        names = [part.strip() for part in text.split(",") if part.strip()]
        unknown = [name for name in names if name not in choices]
        if unknown or not names:
            raise argparse.ArgumentTypeError(
                f"invalid choice(s) {unknown or text!r} (choose from {', '.join(choices)})"
            )
        return list(dict.fromkeys(names))

    return parse


def _setNested(data: dict[str, Any], dotted: str, value: Any) -> None:
    *parents, leaf = dotted.split(".")
    node = data
    for key in parents:
        node = node.setdefault(key, {})
    node[leaf] = value


def resolveSettings(args: argparse.Namespace, **overrides: Any) -> Settings:
    """Settings from --config (if any), then global flags, then command overrides.

    Overrides use dotted keys for nested models ("pit.nu"); None values are skipped.

    Raises:
        ConfigurationError: If the result does not validate.
    """
    base = loadSettings(args.config) if args.config else Settings()
    data = base.model_dump()
    merged = {
        "logLevel": getattr(args, "log_level", None),
        "workers": getattr(args, "workers", None),
        **overrides,
    }
    for key, value in merged.items():
        if value is not None:
            _setNested(data, key, value)
    try:
        settings = Settings(**data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid settings: {e}") from e
    setLogLevel(settings.logLevel)
    return settings


def loadSample(path: Path, settings: Settings, year: int | None = None) -> Sample:
    """A sample file, or one calendar year of returns from a price file."""
    raw = storage.readBytes(path)
    if year is None:
        return Sample(readSampleCsv(raw))
    ingest = settings.ingest.model_copy(update={"source": str(path)})
    return sliceByYear(ingestPrices(raw, ingest), year)


def loadValidation(path: Path | None) -> ValidationSet | None:
    """Validation values in file order, or None without a path."""
    if path is None:
        return None
    return ValidationSet(readSampleCsv(storage.readBytes(path)))


def emitReport(report: dict[str, Any], out: Path | None) -> None:
    """Write a JSON report to a file, or to standard output without one."""
    if out is None:
        sys.stdout.write(storage.dumpJson(report))
        return
    storage.saveJson(out, report)
    logger.info("Wrote %s", out)


def emitTable(frame: pd.DataFrame, out: Path, manifest: RunManifest) -> None:
    """Write a CSV table and its manifest beside it."""
    storage.writeText(out, frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"))
    manifest.writeBeside(out)
    logger.info("Wrote %s (%d rows)", out, len(frame))


def sampleSummary(sample: Sample, source: str, year: int | None) -> dict[str, Any]:
    """Input description embedded in reports."""
    return {"source": source, "year": year, **sample.toDict()}
