"""Run manifests: what produced an output file.

The fingerprint is an xxHash64 of the canonical JSON of the command and its
snapshot, so equal fingerprints mean equal inputs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import xxhash
from pydantic import BaseModel, ConfigDict, Field

from kdebw import storage
from kdebw.config.settings import Settings

MANIFEST_SUFFIX = ".manifest.json"


def canonicalJson(data: Any) -> str:
    """Key-sorted compact JSON."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class RunManifest(BaseModel):
    """Command, parameters and tool version of one run.

    Attributes:
        command: Subcommand name.
        configSnapshot: Effective settings and command arguments.
        version: kdebw version.
    """

    model_config = ConfigDict(frozen=True)

    command: str
    configSnapshot: dict[str, Any] = Field(default_factory=dict)
    version: str

    @classmethod
    def forRun(cls, command: str, settings: Settings, arguments: dict[str, Any]) -> "RunManifest":
        """Manifest of a command run with the given settings and arguments."""
        from kdebw import __version__

        return cls(
            command=command,
            configSnapshot={"settings": settings.snapshot(), "arguments": arguments},
            version=__version__,
        )

    @property
    def fingerprint(self) -> str:
        """Hex xxHash64 of the canonical command + snapshot."""
        payload = canonicalJson({"command": self.command, "config": self.configSnapshot})
        return xxhash.xxh64(payload.encode("utf-8")).hexdigest()

    def toDict(self) -> dict[str, Any]:
        """Convert to dictionary, fingerprint included."""
        data = self.model_dump(mode="json")
        data["fingerprint"] = self.fingerprint
        return data

    def writeBeside(self, output: Path) -> Path:
        """Write as <output>.manifest.json and return that path."""
        path = Path(f"{output}{MANIFEST_SUFFIX}")
        storage.saveJson(path, self.toDict())
        return path
