"""Subcommand implementations.

Each command resolves its settings, runs the computation and writes a JSON report
(with its manifest embedded) or a CSV table (with a manifest beside it).
"""

from __future__ import annotations

import argparse
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError

from kdebw import storage
from kdebw.cli.manifest import RunManifest
from kdebw.cli.options import (
    emitReport,
    emitTable,
    loadSample,
    loadValidation,
    resolveSettings,
    sampleSummary,
)
from kdebw.config.settings import Settings
from kdebw.core.density import KernelDensity
from kdebw.core.sample import Sample, ValidationSet
from kdebw.datasets import (
    Distribution,
    ReturnSeries,
    SimSpec,
    TrueDensity,
    ingestPrices,
    sampleCsvText,
    simulate,
    simulatePair,
    sliceByYear,
    truePdf,
)
from kdebw.divergence import densitySupport, integratedSquaredError
from kdebw.efficiency import (
    hurstExponent,
    marketInformation,
    marketInformationFromSigns,
    nullBands,
    probPositive,
)
from kdebw.exceptions import ConfigurationError, HurstEstimationError, KdebwError
from kdebw.logging.config import CLI_LOGGER
from kdebw.selection import (
    BandwidthMethod,
    BandwidthResult,
    ComplexityCurve,
    buildComplexityCurve,
    complexityAt,
    geometricGrid,
    selectAmisePlugin,
    selectHc,
    selectLikelihood,
    selectPit,
)

logger = logging.getLogger(CLI_LOGGER)

_NEEDS_VALIDATION = (BandwidthMethod.LIK, BandwidthMethod.PIT)

DENSITY_GRID_POINTS = 2001
EFFICIENCY_GRID_POINTS = 100


def _arguments(args: argparse.Namespace) -> dict[str, Any]:
    """Command flags as plain JSON values, for the manifest."""
    skip = {"handler", "config", "log_level", "workers"}
    values: dict[str, Any] = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(value, Path):
            value = str(value)
        elif isinstance(value, list):
            value = [v.value if isinstance(v, BandwidthMethod) else v for v in value]
        elif isinstance(value, tuple):
            value = list(value)
        values[key] = value
    return values


def _simSpec(dist: str, n: int, seed: int) -> SimSpec:
    try:
        return SimSpec(dist=Distribution(dist), n=n, seed=seed)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid simulation parameters: {e}") from e


def _requireValidation(methods: list[BandwidthMethod], validation: ValidationSet | None) -> None:
    missing = [m.value for m in methods if m in _NEEDS_VALIDATION]
    if missing and validation is None:
        raise ConfigurationError(f"Method(s) {', '.join(missing)} need --validation")


def _selectOne(
    method: BandwidthMethod,
    sample: Sample,
    validation: ValidationSet | None,
    settings: Settings,
    curve: ComplexityCurve | None = None,
) -> BandwidthResult:
    search = settings.effectiveSearch()
    if method is BandwidthMethod.COMPLEXITY:
        return selectHc(sample, search, curve=curve)
    if method is BandwidthMethod.AMISE:
        return selectAmisePlugin(sample, search.amiseTol, search.amiseMaxIter)
    assert validation is not None
    if method is BandwidthMethod.LIK:
        return selectLikelihood(sample, validation, search)
    return selectPit(sample, validation, settings.pit, search)


def _bandwidthEntry(
    result: BandwidthResult, sample: Sample, curve: ComplexityCurve, settings: Settings
) -> dict[str, Any]:
    if result.method is BandwidthMethod.COMPLEXITY:
        complexity = result.objective
    else:
        complexity = complexityAt(
            sample, result.bandwidth, curve.scaling, settings.search.quadrature
        )
    return {
        **result.toDict(),
        "complexity": complexity,
        "aboveHp": result.bandwidth > curve.hP,
    }


def cmdSimulate(args: argparse.Namespace) -> int:
    """Write a simulated sample CSV."""
    settings = resolveSettings(args)
    spec = _simSpec(args.dist, args.n, args.seed)
    sample = simulate(spec)
    storage.writeText(args.out, sampleCsvText(sample.values))
    RunManifest.forRun("simulate", settings, _arguments(args)).writeBeside(args.out)
    logger.info("Simulated %d %s values (seed %d)", spec.n, spec.dist.value, spec.seed)
    return 0


def cmdSelect(args: argparse.Namespace) -> int:
    """Report the requested bandwidths, their complexity, and h_p."""
    settings = resolveSettings(args, **{"pit.nu": args.nu})
    methods: list[BandwidthMethod] = args.methods
    validation = loadValidation(args.validation)
    _requireValidation(methods, validation)
    sample = loadSample(args.input, settings, args.year)

    curve = buildComplexityCurve(sample, settings.effectiveSearch())
    bandwidths = {}
    for method in methods:
        result = _selectOne(method, sample, validation, settings, curve)
        bandwidths[method.value] = _bandwidthEntry(result, sample, curve, settings)

    report = {
        "manifest": RunManifest.forRun("select", settings, _arguments(args)).toDict(),
        "input": sampleSummary(sample, str(args.input), args.year),
        "hP": curve.hP,
        "complexityAtHp": complexityAt(
            sample, curve.hP, curve.scaling, settings.search.quadrature
        ),
        "scaling": {"eMax": curve.eMax, "pMax": curve.pMax},
        "bandwidths": bandwidths,
    }
    emitReport(report, args.out)
    return 0


def cmdCurve(args: argparse.Namespace) -> int:
    """Write the E_h, P_h, C_h table over (0, h_p] and the flagged extension."""
    settings = resolveSettings(args, **{"search.curvePoints": args.points})
    sample = loadSample(args.input, settings, args.year)
    curve = buildComplexityCurve(sample, settings.effectiveSearch())
    frame = pd.DataFrame(
        {
            "h": curve.grid,
            "E_h": curve.eValues,
            "P_h": curve.pValues,
            "C_h": curve.cValues,
            "beyond_hp": curve.beyondHp.astype(int),
        }
    )
    emitTable(frame, args.out, RunManifest.forRun("curve", settings, _arguments(args)))
    logger.info("Curve h_p=%.6g, grid h_c=%.6g", curve.hP, curve.hC)
    return 0


def cmdDensity(args: argparse.Namespace) -> int:
    """Write (x, f_h(x)), optionally next to an analytic density."""
    settings = resolveSettings(args, **{"pit.nu": args.nu})
    sample = loadSample(args.input, settings, args.year)

    if args.bandwidth is not None:
        if not (math.isfinite(args.bandwidth) and args.bandwidth > 0):
            raise ConfigurationError(f"--bandwidth must be positive, got {args.bandwidth}")
        bandwidth = float(args.bandwidth)
    else:
        if len(args.method) != 1:
            raise ConfigurationError("--method takes a single method")
        method = args.method[0]
        validation = loadValidation(args.validation)
        _requireValidation([method], validation)
        bandwidth = _selectOne(method, sample, validation, settings).bandwidth

    kd = KernelDensity(sample, bandwidth)
    if args.grid is not None:
        lo, hi, points = args.grid
    else:
        lo, hi = densitySupport(kd)
        points = DENSITY_GRID_POINTS
    x = np.linspace(lo, hi, points)
    columns: dict[str, Any] = {"x": x, "pdf": kd.pdf(x)}
    if args.true_dist is not None:
        columns["true_pdf"] = truePdf(SimSpec(dist=Distribution(args.true_dist)), x)

    emitTable(
        pd.DataFrame(columns),
        args.out,
        RunManifest.forRun("density", settings, {**_arguments(args), "bandwidth": bandwidth}),
    )
    return 0


def _efficiencyGrid(args: argparse.Namespace, sample: Sample) -> np.ndarray:
    if args.h_grid is not None:
        lo, hi, points = args.h_grid
        if lo <= 0:
            raise ConfigurationError(f"--h-grid needs LO > 0, got {lo}")
        return geometricGrid(lo, hi, points)
    return geometricGrid(1e-3 * sample.std, 2.0 * sample.std, EFFICIENCY_GRID_POINTS)


def _yearReport(
    args: argparse.Namespace, settings: Settings, series: ReturnSeries, year: int
) -> dict[str, Any]:
    sample = sliceByYear(series, year)
    grid = _efficiencyGrid(args, sample)
    report: dict[str, Any] = {"year": year, "n": sample.n, "hGrid": grid.tolist()}
    counting = marketInformationFromSigns(sample.values)

    if "posprob" in args.stats:
        report["posProbCounting"] = counting.pPos
        report["posProb"] = [probPositive(KernelDensity(sample, h)) for h in grid]
    if "info" in args.stats:
        bands = nullBands(sample.n, settings.nullTrials, settings.nullSeed)
        info = [marketInformation(sample, h).infoBits for h in grid]
        report["infoCounting"] = counting.toDict()
        report["infoBits"] = info
        report["nullBands"] = bands.toDict()
        report["smallestHAbove"] = {
            f"{level:g}": info[0] > value for level, value in bands.quantiles.items()
        }
    if "hurst" in args.stats:
        try:
            report["hurst"] = hurstExponent(series.logPrices(year), settings.hurst).toDict()
        except HurstEstimationError as e:
            logger.warning("Hurst exponent for %d skipped: %s", year, e)
            report["hurst"] = {"error": str(e)}
    logger.info("Efficiency statistics for %d (%d returns)", year, sample.n)
    return report


def _yearReports(
    args: argparse.Namespace, settings: Settings, series: ReturnSeries
) -> list[dict[str, Any]]:
    """One report per requested year.

    Without --year, a year that cannot be analysed (a trailing single day, say) is
    recorded as {"year": Y, "error": message} and the others go on.
    """
    if args.year is not None:
        return [_yearReport(args, settings, series, args.year)]
    reports = []
    for year in series.years():
        try:
            reports.append(_yearReport(args, settings, series, year))
        except KdebwError as e:
            logger.warning("Year %d skipped: %s", year, e)
            reports.append({"year": year, "error": str(e)})
    return reports


def cmdEfficiency(args: argparse.Namespace) -> int:
    """Positive-return probability and market information against h, and the Hurst exponent."""
    settings = resolveSettings(args, nullTrials=args.null_trials, nullSeed=args.seed)
    raw = storage.readBytes(args.input)
    series = ingestPrices(raw, settings.ingest.model_copy(update={"source": str(args.input)}))

    report = {
        "manifest": RunManifest.forRun("efficiency", settings, _arguments(args)).toDict(),
        "series": series.toDict(),
        "years": _yearReports(args, settings, series),
    }
    emitReport(report, args.out)
    return 0


def studyRun(
    spec: SimSpec, m: int, methods: list[BandwidthMethod], settings: Settings
) -> dict[str, Any]:
    """One simulated sample: every selector, its complexity and its ISE against the truth.

    A selector that fails is recorded as {"error": message} and the run goes on.
    """
    sample, held = simulatePair(spec, m)
    validation = ValidationSet(held.values)
    search = settings.effectiveSearch()
    curve = buildComplexityCurve(sample, search)
    truth = TrueDensity(spec)
    run: dict[str, Any] = {"dist": spec.dist.value, "seed": spec.seed, "hP": curve.hP}
    for method in methods:
        try:
            result = _selectOne(method, sample, validation, settings, curve)
        except KdebwError as e:
            logger.warning("%s seed %d: %s failed: %s", spec.dist.value, spec.seed, method.value, e)
            run[method.value] = {"error": str(e)}
            continue
        kd = KernelDensity(sample, result.bandwidth)
        run[method.value] = {
            **_bandwidthEntry(result, sample, curve, settings),
            "ise": integratedSquaredError(kd, truth, densitySupport(kd), search.quadrature),
        }
    return run


def _bandwidths(run: dict[str, Any]) -> dict[str, float]:
    """Selected bandwidths of a run keyed by method value, plus "hP"."""
    values = {"hP": float(run["hP"])}
    for key, entry in run.items():
        if isinstance(entry, dict) and "bandwidth" in entry:
            values[key] = float(entry["bandwidth"])
    return values


def _orderingFrequency(runs: list[dict[str, Any]], smaller: str, larger: str) -> float | None:
    """Share of runs where the bandwidth of `smaller` is below that of `larger`."""
    outcomes = [
        values[smaller] < values[larger]
        for values in map(_bandwidths, runs)
        if smaller in values and larger in values
    ]
    return float(np.mean(outcomes)) if outcomes else None


def _largestFrequency(runs: list[dict[str, Any]], method: str, methods: list[str]) -> float | None:
    outcomes = []
    for values in map(_bandwidths, runs):
        selected = {m: values[m] for m in methods if m in values}
        if len(selected) == len(methods):
            outcomes.append(max(selected, key=selected.__getitem__) == method)
    return float(np.mean(outcomes)) if outcomes else None


def summarizeStudy(runs: list[dict[str, Any]], methods: list[BandwidthMethod]) -> dict[str, Any]:
    """Median bandwidths and ordering frequencies over the runs of one distribution."""
    names = [m.value for m in methods]
    medians: dict[str, float | None] = {}
    for name in [*names, "hP"]:
        values = [b[name] for b in map(_bandwidths, runs) if name in b]
        medians[name] = float(np.median(values)) if values else None

    c, amise = BandwidthMethod.COMPLEXITY.value, BandwidthMethod.AMISE.value
    pit, lik = BandwidthMethod.PIT.value, BandwidthMethod.LIK.value
    likBelowHp = _orderingFrequency(runs, lik, "hP")
    return {
        "runs": len(runs),
        "medians": medians,
        "frequencies": {
            "pitBelowHc": _orderingFrequency(runs, pit, c),
            "pitBelowAmise": _orderingFrequency(runs, pit, amise),
            "likBelowHp": likBelowHp,
            "likAboveHp": None if likBelowHp is None else 1.0 - likBelowHp,
            "hcLargest": _largestFrequency(runs, c, names) if c in names else None,
        },
    }


def cmdStudy(args: argparse.Namespace) -> int:
    """Simulation study: every selector on many seeded samples per distribution."""
    settings = resolveSettings(args, **{"pit.nu": args.nu}).forStudy()
    methods: list[BandwidthMethod] = args.methods
    distributions: dict[str, Any] = {}
    for dist in args.dists:
        runs = []
        for offset in range(args.seeds):
            spec = _simSpec(dist, args.n, args.seed + offset)
            runs.append(studyRun(spec, args.m, methods, settings))
            logger.info("study %s: seed %d done", dist, spec.seed)
        distributions[dist] = {"summary": summarizeStudy(runs, methods), "runs": runs}

    report = {
        "manifest": RunManifest.forRun("study", settings, _arguments(args)).toDict(),
        "distributions": distributions,
    }
    emitReport(report, args.out)
    return 0
