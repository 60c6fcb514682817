"""Multi-seed selector comparisons and pinned BTC-USD results."""

import numpy as np
import pytest

from kdebw.cli import studyRun, summarizeStudy
from kdebw.config import Settings
from kdebw.core import KernelDensity
from kdebw.datasets import SimSpec, ingestPrices, sliceByYear
from kdebw.efficiency import hurstExponent, marketInformation, nullBands, probPositive
from kdebw.selection import BandwidthMethod, selectHc

SEEDS = range(20)
METHODS = [
    BandwidthMethod.COMPLEXITY,
    BandwidthMethod.AMISE,
    BandwidthMethod.PIT,
    BandwidthMethod.LIK,
]

STUDY_SETTINGS = Settings(workers=4).forStudy()

HC_BY_YEAR = {
    2015: 0.016,
    2016: 0.011,
    2017: 0.013,
    2018: 0.011,
    2019: 0.010,
    2020: 0.018,
    2021: 0.009,
    2022: 0.011,
}


def _study(dist: str) -> dict:
    runs = [
        studyRun(SimSpec(dist=dist, n=1000, seed=seed), 1000, METHODS, STUDY_SETTINGS)
        for seed in SEEDS
    ]
    return summarizeStudy(runs, METHODS)


@pytest.fixture(scope="module")
def gaussian_study():
    """Every selector on 20 Gaussian samples."""
    return _study("gaussian")


@pytest.fixture(scope="module")
def student_study():
    """Every selector on 20 Student-t(5) samples."""
    return _study("student5")


@pytest.fixture(scope="module")
def mixture_study():
    """Every selector on 20 mixture samples."""
    return _study("mixture")


@pytest.mark.slow
class TestSelectorComparison:
    """Selector orderings over 20 seeds with n = m = 1000."""

    def test_gaussian_medians(self, gaussian_study):
        """Test the median bandwidths on Gaussian samples."""
        medians = gaussian_study["medians"]
        assert 0.06 <= medians["complexity"] <= 0.20
        assert 0.05 <= medians["amise"] <= 0.40
        assert 0.15 <= medians["lik"] <= 0.50
        assert 0.03 <= medians["pit"] <= 0.20
        assert 0.10 <= medians["hP"] <= 0.35

    def test_student_median(self, student_study):
        """Test the median complexity bandwidth on Student-t(5) samples."""
        assert 0.15 <= student_study["medians"]["complexity"] <= 0.40

    def test_mixture_hp(self, mixture_study):
        """Test the median h_p on mixture samples."""
        assert 0.35 <= mixture_study["medians"]["hP"] <= 0.80

    @pytest.mark.parametrize("study", ["gaussian_study", "student_study"])
    def test_pit_smallest(self, study, request):
        """Test PIT selects below the complexity and AMISE bandwidths."""
        frequencies = request.getfixturevalue(study)["frequencies"]
        assert frequencies["pitBelowHc"] >= 0.7
        assert frequencies["pitBelowAmise"] >= 0.7

    @pytest.mark.parametrize("study", ["gaussian_study", "student_study"])
    def test_likelihood_oversmooths(self, study, request):
        """Test the likelihood bandwidth exceeds h_p."""
        assert request.getfixturevalue(study)["frequencies"]["likAboveHp"] >= 0.7

    def test_mixture_ordering(self, mixture_study):
        """Test h_c is the largest selector and h_lik stays below h_p."""
        frequencies = mixture_study["frequencies"]
        assert frequencies["hcLargest"] >= 0.6
        assert frequencies["likBelowHp"] >= 0.6


class TestPinnedBtc:
    """Yearly statistics of the pinned BTC-USD prices."""

    @pytest.mark.slow
    @pytest.mark.parametrize("year", sorted(HC_BY_YEAR))
    def test_complexity_bandwidth(self, btc_csv, year):
        """Test the maximum-complexity bandwidth per year."""
        sample = sliceByYear(ingestPrices(btc_csv), year)
        assert selectHc(sample).bandwidth == pytest.approx(HC_BY_YEAR[year], abs=0.003)

    @pytest.mark.parametrize("year,expected", [(2017, 0.528), (2018, 0.537)])
    def test_hurst(self, btc_csv, year, expected):
        """Test the Hurst exponent of the yearly log-prices."""
        series = ingestPrices(btc_csv)
        assert hurstExponent(series.logPrices(year)).exponent == pytest.approx(expected, abs=0.03)

    def test_information_2017(self, btc_csv):
        """Test 2017 carries information above the 99.9% band at small h."""
        sample = sliceByYear(ingestPrices(btc_csv), 2017)
        bands = nullBands(sample.n)
        assert marketInformation(sample, 1e-3 * sample.std).infoBits > bands.band(0.999)

    def test_positive_probability_2015(self, btc_csv):
        """Test the small-h probability of a positive return in 2015."""
        sample = sliceByYear(ingestPrices(btc_csv), 2015)
        assert 0.46 <= probPositive(KernelDensity(sample, 1e-6 * sample.std)) <= 0.62

    def test_information_decreases(self, btc_csv):
        """Test smoothing removes information in every year."""
        series = ingestPrices(btc_csv)
        for year in sorted(HC_BY_YEAR):
            sample = sliceByYear(series, year)
            grid = np.geomspace(1e-3 * sample.std, 2.0 * sample.std, 2)
            small, large = (marketInformation(sample, h).infoBits for h in grid)
            assert large < small
