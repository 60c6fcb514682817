"""Command-line front end for kdebw."""

from kdebw.cli.commands import (
    cmdCurve,
    cmdDensity,
    cmdEfficiency,
    cmdSelect,
    cmdSimulate,
    cmdStudy,
    studyRun,
    summarizeStudy,
)
from kdebw.cli.manifest import RunManifest

__all__ = [
    "RunManifest",
    "cmdSimulate",
    "cmdSelect",
    "cmdCurve",
    "cmdDensity",
    "cmdEfficiency",
    "cmdStudy",
    "studyRun",
    "summarizeStudy",
]
