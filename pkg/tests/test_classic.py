"""Tests for the AMISE, likelihood and PIT bandwidth selectors."""

import math

import numpy as np
import pytest

from kdebw.config import PitConfig, QuadratureConfig, SearchConfig
from kdebw.core import KernelDensity, Sample, ValidationSet, silvermanBandwidth
from kdebw.exceptions import ConfigurationError, ConvergenceError, SearchBoundaryError
from kdebw.selection import (
    BandwidthMethod,
    amiseUpdate,
    kTau,
    pitCriterion,
    pitTieIndex,
    selectAmisePlugin,
    selectLikelihood,
    selectPit,
    validationLogLikelihood,
)

FAST = SearchConfig(validationGridPoints=60, quadrature=QuadratureConfig(points=1001))

GAUSSIAN_CURVATURE = 3 / (8 * math.sqrt(math.pi))


def _kTauOracle(z: np.ndarray, tau: int) -> float:
    """Double-loop k_tau."""
    m = len(z)
    if tau == 0:
        best = 0.0
        for i in range(m):
            count = sum(1 for j in range(m) if z[j] <= z[i])
            best = max(best, abs(z[i] - count / (m + 1)))
        return best
    pairs = m - tau
    best = 0.0
    for i in range(pairs):
        count = sum(
            1 for j in range(pairs) if z[j] <= z[i] and z[j + tau] <= z[i + tau]
        )
        best = max(best, abs(z[i] * z[i + tau] - count / (pairs + 1)))
    return best


@pytest.fixture(scope="module")
def validation():
    """1000 Gaussian validation draws independent of the training sample."""
    return ValidationSet(np.random.default_rng(2).standard_normal(1000))


class TestAmisePlugin:
    """Tests for the AMISE fixed-point selector."""

    def test_known_curvature(self, gaussian_sample):
        """Test the fixed point with the true N(0, 1) curvature."""
        result = selectAmisePlugin(gaussian_sample, roughness=lambda h: GAUSSIAN_CURVATURE)
        assert result.method is BandwidthMethod.AMISE
        assert result.bandwidth == pytest.approx(0.26576, abs=1e-4)

    def test_update_formula(self, gaussian_sample):
        """Test one step of the plug-in map."""
        h = amiseUpdate(gaussian_sample, 0.3, roughness=lambda h: GAUSSIAN_CURVATURE)
        assert h == pytest.approx((4 / (3 * 1000)) ** 0.2)

    def test_estimated_curvature(self, gaussian_sample):
        """Test the plug-in on Gaussian draws starts from Silverman and converges."""
        result = selectAmisePlugin(gaussian_sample)
        assert result.trace[0][0] == pytest.approx(silvermanBandwidth(gaussian_sample))
        assert 0.05 <= result.bandwidth <= 0.40
        assert result.details["iterations"] == result.iterations - 1

    def test_divergence(self, gaussian_sample):
        """Test an iterate leaving the plausible range raises with the trace."""
        with pytest.raises(ConvergenceError) as excinfo:
            selectAmisePlugin(gaussian_sample, roughness=lambda h: 1e-300)
        assert len(excinfo.value.trace) == 2

    def test_iteration_cap(self, gaussian_sample):
        """Test running out of iterations raises."""
        with pytest.raises(ConvergenceError):
            selectAmisePlugin(gaussian_sample, tol=1e-15, maxIter=1)

    def test_tolerance_validated(self, gaussian_sample):
        """Test a non-positive tolerance is rejected."""
        with pytest.raises(ConfigurationError):
            selectAmisePlugin(gaussian_sample, tol=0.0)


class TestLikelihood:
    """Tests for the validation-likelihood selector."""

    def test_log_likelihood_floor(self):
        """Test far-away validation points hit the density floor."""
        sample = Sample([0.0, 1.0])
        far = ValidationSet([1e6, -1e6])
        assert validationLogLikelihood(sample, far, 0.1) == pytest.approx(2 * math.log(1e-300))

    def test_log_likelihood_value(self):
        """Test the sum of log densities."""
        sample = Sample([-1.0, 1.0])
        value = validationLogLikelihood(sample, ValidationSet([0.0, 0.0]), 1.0)
        assert value == pytest.approx(2 * math.log(0.241971), abs=1e-5)

    def test_gaussian_range(self, gaussian_sample, validation):
        """Test the likelihood bandwidth on Gaussian draws."""
        result = selectLikelihood(gaussian_sample, validation, FAST)
        assert result.method is BandwidthMethod.LIK
        assert 0.10 <= result.bandwidth <= 0.60
        best = max(v for _, v in result.trace[:-1])
        assert result.objective >= best - 1e-9

    def test_outlier_pushes_bandwidth_up(self, gaussian_sample, validation):
        """Test one validation point at 10 raises h; one at 1e3 hits the density floor."""
        base = selectLikelihood(gaussian_sample, validation, FAST)
        values = validation.values.copy()
        values[0] = 10.0
        pulled = selectLikelihood(gaussian_sample, ValidationSet(values), FAST)
        assert pulled.bandwidth > base.bandwidth
        values[0] = 1e3
        clamped = selectLikelihood(gaussian_sample, ValidationSet(values), FAST)
        assert math.isfinite(clamped.objective)
        assert clamped.bandwidth < pulled.bandwidth

    def test_unbracketed(self, gaussian_sample, validation):
        """Test a grid starting above the optimum raises."""
        search = FAST.model_copy(
            update={"validationLowerFactor": 1.0, "validationUpperFactor": 1.5}
        )
        with pytest.raises(SearchBoundaryError):
            selectLikelihood(gaussian_sample, validation, search)


class TestKTau:
    """Tests for the lagged PIT statistic."""

    def test_hand_examples(self):
        """Test small cases computed by hand."""
        assert kTau([0.5], 0) == 0.0
        assert kTau([0.2, 0.8], 0) == pytest.approx(0.133333, abs=1e-6)
        assert kTau([0.5, 0.5], 1) == pytest.approx(0.25)

    @pytest.mark.parametrize("m", [2, 5, 37, 200])
    def test_matches_oracle(self, m):
        """Test the vectorized count against the double loop."""
        z = np.random.default_rng(m).uniform(size=m)
        for tau in range(min(22, m - 1) + 1):
            assert kTau(z, tau) == _kTauOracle(z, tau)

    def test_invalid_lag(self):
        """Test negative lags and lags without pairs."""
        with pytest.raises(ValueError):
            kTau([0.1, 0.2], -1)
        with pytest.raises(ValueError):
            kTau([0.1, 0.2], 2)

    def test_criterion_scaling(self):
        """Test sqrt(m - tau) weighting."""
        z = np.random.default_rng(4).uniform(size=30)
        expected = max(math.sqrt(30 - tau) * kTau(z, tau) for tau in range(4))
        assert pitCriterion(z, 3) == expected


class TestPit:
    """Tests for the PIT selector."""

    def test_lag_must_be_below_m(self, gaussian_sample):
        """Test nu >= m is a configuration error."""
        with pytest.raises(ConfigurationError):
            selectPit(gaussian_sample, np.linspace(-1, 1, 10), PitConfig(nu=22))

    def test_matches_grid_oracle(self, small_sample):
        """Test the selected bandwidth is the grid argmin of the criterion."""
        values = ValidationSet(np.random.default_rng(8).standard_normal(300))
        search = FAST.model_copy(update={"validationGridPoints": 30})
        grid = np.geomspace(1e-3 * small_sample.std, 5.0 * small_sample.std, 30)
        criteria = [
            pitCriterion(KernelDensity(small_sample, h).cdf(values.values), 5) for h in grid
        ]
        cfg = PitConfig(nu=5, tieSteps=0)
        index = int(np.argmin(criteria))
        if index in (0, grid.size - 1):
            with pytest.raises(SearchBoundaryError):
                selectPit(small_sample, values, cfg, search)
            return
        result = selectPit(small_sample, values, cfg, search)
        assert result.method is BandwidthMethod.PIT
        assert result.bandwidth == pytest.approx(grid[index], rel=1e-12)
        assert result.objective == pytest.approx(criteria[index], rel=1e-12)
        assert result.details["nu"] == 5
        assert result.details["gridArgmin"] == result.bandwidth

    def test_ties_resolved_to_least_smoothing(self, small_sample):
        """Test near-minimal grid values left of the argmin select the smallest h."""
        values = ValidationSet(np.random.default_rng(8).standard_normal(300))
        search = FAST.model_copy(update={"validationGridPoints": 30})
        grid = np.geomspace(1e-3 * small_sample.std, 5.0 * small_sample.std, 30)
        criteria = np.array(
            [pitCriterion(KernelDensity(small_sample, h).cdf(values.values), 5) for h in grid]
        )
        argmin = int(np.argmin(criteria))
        tolerance = 2.0 * math.sqrt(300) / 301
        index = argmin
        while index > 0 and criteria[index - 1] <= criteria[argmin] + tolerance:
            index -= 1
        cfg = PitConfig(nu=5, tieSteps=2.0)
        if argmin in (0, grid.size - 1) or index == 0:
            with pytest.raises(SearchBoundaryError):
                selectPit(small_sample, values, cfg, search)
            return
        result = selectPit(small_sample, values, cfg, search)
        assert result.bandwidth == pytest.approx(grid[index], rel=1e-12)
        assert result.bandwidth <= result.details["gridArgmin"]
        assert result.objective <= criteria[argmin] + tolerance
        assert result.details["tieTolerance"] == pytest.approx(tolerance)

    def test_tie_index(self):
        """Test the tied run stops at the first value above the threshold."""
        values = np.array([5.0, 1.3, 1.05, 1.2, 1.0, 3.0])
        assert pitTieIndex(values, 4, 0.0) == 4
        assert pitTieIndex(values, 4, 0.25) == 2
        assert pitTieIndex(values, 4, 0.3) == 1
        assert pitTieIndex(values, 4, 10.0) == 0

    def test_ties_reaching_lower_bound(self):
        """Test a flat run down to the first grid point raises."""
        sample = Sample(np.random.default_rng(5).standard_normal(200))
        values = ValidationSet(np.random.default_rng(6).standard_normal(200))
        search = FAST.model_copy(update={"validationGridPoints": 20})
        with pytest.raises(SearchBoundaryError):
            selectPit(sample, values, PitConfig(nu=2, tieSteps=1e6), search)

    def test_oversmoothed_grid_hits_boundary(self, gaussian_sample, validation):
        """Test a grid far above the optimum raises."""
        search = FAST.model_copy(
            update={"validationLowerFactor": 2.0, "validationUpperFactor": 50.0}
        )
        with pytest.raises(SearchBoundaryError):
            selectPit(gaussian_sample, validation, PitConfig(nu=2), search)
