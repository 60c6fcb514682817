"""Logging configuration for kdebw.

Logs go to standard error so that reports written to standard output stay clean.
"""

import logging
import sys
from enum import Enum
from typing import Any

# kdebw logger hierarchy
KDEBW_LOGGER = "kdebw"
STORAGE_LOGGER = "kdebw.storage"
SELECTION_LOGGER = "kdebw.selection"
EFFICIENCY_LOGGER = "kdebw.efficiency"
DATASETS_LOGGER = "kdebw.datasets"
CLI_LOGGER = "kdebw.cli"


class LogLevel(str, Enum):
    """Log levels for kdebw."""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class KdebwLogFormatter(logging.Formatter):
    """Formatter with optional level colours and timestamps."""

    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[32m",  # Green
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[35m",  # Magenta
        "RESET": "\033[0m",
    }

    def __init__(self, useColors: bool = True, includeTimestamp: bool = True):
        self._useColors = useColors
        self._includeTimestamp = includeTimestamp

        if includeTimestamp:
            fmt = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
            datefmt = "%Y-%m-%d %H:%M:%S"
        else:
            fmt = "[%(levelname)s] %(name)s: %(message)s"
            datefmt = None

        super().__init__(fmt=fmt, datefmt=datefmt)

    def format(self, record: logging.LogRecord) -> str:
        """Format the record, colouring the level name on terminals."""
        if self._useColors and sys.stderr.isatty():
            levelColor = self.COLORS.get(record.levelname, "")
            reset = self.COLORS["RESET"]
            record = logging.makeLogRecord(record.__dict__)
            record.levelname = f"{levelColor}{record.levelname}{reset}"

        return super().format(record)


def _toLogLevel(level: LogLevel | str) -> LogLevel:
    if isinstance(level, LogLevel):
        return level
    return LogLevel(level.upper())


def configureLogging(
    level: LogLevel | str = LogLevel.INFO,
    useColors: bool = True,
    includeTimestamp: bool = True,
    logFile: str | None = None,
) -> logging.Logger:
    """Configure kdebw logging.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        useColors: Whether to colour level names on a terminal.
        includeTimestamp: Whether to include timestamps.
        logFile: Optional file that receives a plain-text copy of the log.

    Returns:
        The configured kdebw root logger.
    """
    logger = logging.getLogger(KDEBW_LOGGER)
    logger.setLevel(getattr(logging, _toLogLevel(level).value))
    logger.handlers.clear()

    consoleHandler = logging.StreamHandler(sys.stderr)
    consoleHandler.setFormatter(
        KdebwLogFormatter(useColors=useColors, includeTimestamp=includeTimestamp)
    )
    logger.addHandler(consoleHandler)

    if logFile:
        fileHandler = logging.FileHandler(logFile, encoding="utf-8")
        fileHandler.setFormatter(KdebwLogFormatter(useColors=False, includeTimestamp=True))
        logger.addHandler(fileHandler)

    logger.propagate = False
    return logger


def getLogger(name: str) -> logging.Logger:
    """Get a kdebw logger.

    Args:
        name: Logger name (prefixed with 'kdebw.' if not already).

    Returns:
        Logger instance.
    """
    if not name.startswith("kdebw."):
        name = f"kdebw.{name}"
    return logging.getLogger(name)


def setLogLevel(level: LogLevel | str, loggerName: str | None = None) -> None:
    """Set log level for one logger or for the whole kdebw tree.

    Args:
        level: Log level to set.
        loggerName: Specific logger name (None for the kdebw root).
    """
    levelValue = getattr(logging, _toLogLevel(level).value)
    logging.getLogger(loggerName or KDEBW_LOGGER).setLevel(levelValue)


class LogContext:
    """Context manager for temporary log level changes.

    Example:
        with LogContext(level=LogLevel.DEBUG, loggerName="kdebw.selection"):
            selectHc(sample)
    """

    def __init__(self, level: LogLevel | str, loggerName: str = KDEBW_LOGGER):
        self._level = _toLogLevel(level)
        self._loggerName = loggerName
        self._originalLevel: int | None = None

    def __enter__(self) -> "LogContext":
        logger = logging.getLogger(self._loggerName)
        self._originalLevel = logger.level
        logger.setLevel(getattr(logging, self._level.value))
        return self

    def __exit__(self, *args: Any) -> None:
        if self._originalLevel is not None:
            logging.getLogger(self._loggerName).setLevel(self._originalLevel)


# Quiet default until a caller configures logging
_defaultLogger = logging.getLogger(KDEBW_LOGGER)
if not _defaultLogger.handlers:
    configureLogging(level=LogLevel.WARNING, useColors=True)
