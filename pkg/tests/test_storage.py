"""Tests for atomic file output and run manifests."""

import pytest

from kdebw import storage
from kdebw.cli.manifest import RunManifest, canonicalJson
from kdebw.config import Settings
from kdebw.exceptions import StorageError


class TestStorage:
    """Tests for the storage helpers."""

    def test_write_and_load(self, tmp_path):
        """Test a report round trip through disk."""
        path = tmp_path / "nested" / "report.json"
        storage.saveJson(path, {"hP": 0.2, "names": ["c", "amise"]})
        assert storage.loadJson(path) == {"hP": 0.2, "names": ["c", "amise"]}
        assert [p.name for p in path.parent.iterdir()] == ["report.json"]

    def test_overwrite(self, tmp_path):
        """Test an existing file is replaced."""
        path = tmp_path / "out.txt"
        storage.writeText(path, "first\n")
        storage.writeText(path, "second\n")
        assert path.read_text() == "second\n"

    def test_unwritable_parent(self, tmp_path):
        """Test a file in place of the parent directory."""
        blocker = tmp_path / "blocker"
        blocker.write_text("x")
        with pytest.raises(StorageError):
            storage.writeText(blocker / "out.txt", "data")

    def test_missing_files(self, tmp_path):
        """Test reading absent files."""
        with pytest.raises(StorageError):
            storage.loadJson(tmp_path / "absent.json")
        with pytest.raises(StorageError):
            storage.readBytes(tmp_path / "absent.csv")

    def test_invalid_json(self, tmp_path):
        """Test malformed JSON is reported."""
        path = tmp_path / "bad.json"
        path.write_text("{")
        with pytest.raises(StorageError):
            storage.loadJson(path)

    def test_unserializable(self):
        """Test objects JSON cannot encode."""
        with pytest.raises(StorageError):
            storage.dumpJson({"value": object()})


class TestRunManifest:
    """Tests for run manifests."""

    def test_fingerprint_stable(self):
        """Test equal inputs give equal fingerprints."""
        a = RunManifest.forRun("select", Settings(), {"input": "a.csv"})
        b = RunManifest.forRun("select", Settings(), {"input": "a.csv"})
        assert a.fingerprint == b.fingerprint
        assert len(a.fingerprint) == 16

    def test_fingerprint_sensitive(self):
        """Test any parameter change alters the fingerprint."""
        base = RunManifest.forRun("select", Settings(), {"input": "a.csv"})
        other = RunManifest.forRun("select", Settings(workers=2), {"input": "a.csv"})
        assert base.fingerprint != other.fingerprint
        curve = RunManifest.forRun("curve", Settings(), {"input": "a.csv"})
        assert base.fingerprint != curve.fingerprint

    def test_write_beside(self, tmp_path):
        """Test the manifest file name and contents."""
        manifest = RunManifest.forRun("curve", Settings(), {"points": 50})
        path = manifest.writeBeside(tmp_path / "curve.csv")
        assert path.name == "curve.csv.manifest.json"
        data = storage.loadJson(path)
        assert data["fingerprint"] == manifest.fingerprint
        assert data["configSnapshot"]["arguments"] == {"points": 50}
        assert data["version"] == "0.1.0"

    def test_canonical_json(self):
        """Test key order does not matter."""
        assert canonicalJson({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
