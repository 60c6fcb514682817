"""kdebw - kernel density bandwidth selection by complexity maximization.

Selects the bandwidth of a Gaussian kernel density estimate by maximizing a
scaled complexity between the empirical distribution and the fitted Gaussian,
compares it with the AMISE plug-in, validation-likelihood and PIT selectors,
and computes sign-based market-efficiency statistics of return series.

Example:
    >>> from kdebw import Sample, selectHc
    >>> from kdebw.datasets import SimSpec, simulate
    >>> sample = simulate(SimSpec(dist="gaussian", n=1000, seed=1))
    >>> result = selectHc(sample)
    >>> result.bandwidth < result.details["hP"]
    True
"""

from typing import Any

__version__ = "0.1.0"

__all__ = [
    # Core
    "Sample",
    "ValidationSet",
    "KernelDensity",
    "silvermanBandwidth",
    # Selection
    "BandwidthMethod",
    "BandwidthResult",
    "findHp",
    "buildComplexityCurve",
    "selectHc",
    "selectAmisePlugin",
    "selectLikelihood",
    "selectPit",
    # Efficiency
    "marketInformation",
    "nullBands",
    "hurstExponent",
    # Config
    "Settings",
    "getSettings",
    "loadSettings",
    # Logging
    "configureLogging",
    "getLogger",
    "LogLevel",
    # Exceptions
    "KdebwError",
    "InvalidSampleError",
    "DegenerateSampleError",
    "UnsupportedKernelError",
    "QuadratureError",
    "SearchBoundaryError",
    "ConvergenceError",
    "UndefinedProbabilityError",
    "HurstEstimationError",
    "DataIngestError",
    "DuplicateDatesError",
    "EmptyYearError",
    "ConfigurationError",
    "StorageError",
]


def __getattr__(name: str) -> Any:
    """Lazy import to avoid circular dependencies."""
    if name in ("Sample", "ValidationSet", "KernelDensity", "silvermanBandwidth"):
        from kdebw import core

        return getattr(core, name)
    elif name in (
        "BandwidthMethod",
        "BandwidthResult",
        "findHp",
        "buildComplexityCurve",
        "selectHc",
        "selectAmisePlugin",
        "selectLikelihood",
        "selectPit",
    ):
        from kdebw import selection

        return getattr(selection, name)
    elif name in ("marketInformation", "nullBands", "hurstExponent"):
        from kdebw import efficiency

        return getattr(efficiency, name)
    elif name in ("Settings", "getSettings", "loadSettings"):
        from kdebw import config

        return getattr(config, name)
    elif name in ("configureLogging", "getLogger", "LogLevel"):
        from kdebw import logging as kdebw_logging

        return getattr(kdebw_logging, name)
    elif name in __all__:
        from kdebw import exceptions

        return getattr(exceptions, name)
    raise AttributeError(f"module 'kdebw' has no attribute '{name}'")
