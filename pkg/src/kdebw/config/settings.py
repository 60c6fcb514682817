"""kdebw configuration settings using pydantic-settings."""

from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from kdebw.config.models import (
    HurstConfig,
    IngestConfig,
    PitConfig,
    QuadratureConfig,
    SearchConfig,
)
from kdebw.exceptions import ConfigurationError


def _studySearch() -> SearchConfig:
    return SearchConfig(
        hpGridPoints=80,
        curvePoints=150,
        extendPoints=0,
        validationGridPoints=80,
        quadrature=QuadratureConfig(points=1001),
    )


class Settings(BaseSettings):
    """kdebw configuration settings.

    Settings come from keyword arguments or from a YAML file; the environment is
    never consulted.

    Attributes:
        logLevel: Logging level.
        workers: Threads used for grid evaluations.
        nullTrials: Monte Carlo trials for the zero-information bands.
        nullSeed: Seed of the Monte Carlo bands.
        search: Bandwidth search grids and tolerances.
        studySearch: Lighter grids used by the simulation study in place of search.
        pit: PIT selector parameters.
        hurst: Rescaled-range parameters.
        ingest: Price CSV layout.
    """

    model_config = SettingsConfigDict(extra="ignore", frozen=True)

    logLevel: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="WARNING",
        description="Logging level",
    )
    workers: int = Field(default=1, ge=1, description="Threads for grid evaluation")
    nullTrials: int = Field(default=10_000, ge=1000, description="Null-band trials")
    nullSeed: int = Field(default=0, description="Null-band seed")

    search: SearchConfig = Field(default_factory=SearchConfig)
    studySearch: SearchConfig = Field(default_factory=_studySearch)
    pit: PitConfig = Field(default_factory=PitConfig)
    hurst: HurstConfig = Field(default_factory=HurstConfig)
    ingest: IngestConfig = Field(default_factory=IngestConfig)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    def effectiveSearch(self) -> SearchConfig:
        """Search config with the top-level worker count applied."""
        if self.search.workers == self.workers:
            return self.search
        return self.search.model_copy(update={"workers": self.workers})

    def forStudy(self) -> "Settings":
        """Same settings with studySearch as the search config."""
        return self.model_copy(update={"search": self.studySearch})

    def snapshot(self) -> dict[str, Any]:
        """JSON-ready dump of every parameter."""
        return self.model_dump(mode="json")


def loadSettings(path: Path | str, **overrides: Any) -> Settings:
    """Load settings from a YAML file.

    Args:
        path: YAML file whose keys mirror the Settings fields.
        **overrides: Values taking precedence over the file.

    Returns:
        Validated Settings.

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid.
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise ConfigurationError(f"Config file not found: {path}")
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {path} must hold a mapping")

    data.update(overrides)
    try:
        return Settings(**data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid settings in {path}: {e}") from e


@lru_cache
def getSettings() -> Settings:
    """Get cached default settings instance.

    Returns:
        Singleton Settings instance.
    """
    return Settings()
