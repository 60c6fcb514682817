"""Logging infrastructure for kdebw."""

from kdebw.logging.config import (
    LogContext,
    LogLevel,
    configureLogging,
    getLogger,
    setLogLevel,
)

__all__ = [
    "configureLogging",
    "getLogger",
    "setLogLevel",
    "LogContext",
    "LogLevel",
]
