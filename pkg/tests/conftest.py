"""Shared pytest fixtures for kdebw tests."""

from pathlib import Path

import numpy as np
import pytest

from kdebw.core import Sample

FIXTURES = Path(__file__).parent / "fixtures"
BTC_CSV = FIXTURES / "BTC-USD.csv"


def priceCsv(rows: list[tuple[str, object]], header: str = "Date,Close") -> bytes:
    """Build price CSV bytes from (date, price) rows."""
    lines = [header] + [f"{d},{p}" for d, p in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def gaussian_sample() -> Sample:
    """1000 standard Gaussian draws."""
    return Sample(np.random.default_rng(1).standard_normal(1000))


@pytest.fixture
def small_sample() -> Sample:
    """50 standard Gaussian draws."""
    return Sample(np.random.default_rng(7).standard_normal(50))


@pytest.fixture
def btc_csv() -> bytes:
    """Pinned BTC-USD daily prices; skipped when the file is not committed."""
    if not BTC_CSV.exists():
        pytest.skip("tests/fixtures/BTC-USD.csv not present")
    return BTC_CSV.read_bytes()
