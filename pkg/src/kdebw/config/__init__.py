"""Configuration module for kdebw."""

from kdebw.config.models import (
    HurstConfig,
    IngestConfig,
    PitConfig,
    QuadratureConfig,
    SearchConfig,
)
from kdebw.config.settings import Settings, getSettings, loadSettings

__all__ = [
    "Settings",
    "getSettings",
    "loadSettings",
    "SearchConfig",
    "QuadratureConfig",
    "PitConfig",
    "HurstConfig",
    "IngestConfig",
]
