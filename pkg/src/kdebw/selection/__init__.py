"""Bandwidth selection: complexity maximization and reference criteria."""

from kdebw.selection.classic import (
    amiseUpdate,
    kTau,
    pitCriterion,
    pitTieIndex,
    selectAmisePlugin,
    selectLikelihood,
    selectPit,
    validationLogLikelihood,
)
from kdebw.selection.complexity import (
    ComplexityCurve,
    ComplexityScaling,
    buildComplexityCurve,
    complexityAt,
    findHp,
    kernelDivergence,
    selectHc,
)
from kdebw.selection.result import BandwidthMethod, BandwidthResult
from kdebw.selection.search import (
    geometricGrid,
    goldenSectionMinimize,
    ternarySearchMaximize,
)

__all__ = [
    "BandwidthMethod",
    "BandwidthResult",
    "ComplexityCurve",
    "ComplexityScaling",
    "findHp",
    "complexityAt",
    "kernelDivergence",
    "buildComplexityCurve",
    "selectHc",
    "amiseUpdate",
    "selectAmisePlugin",
    "validationLogLikelihood",
    "selectLikelihood",
    "kTau",
    "pitCriterion",
    "pitTieIndex",
    "selectPit",
    "geometricGrid",
    "goldenSectionMinimize",
    "ternarySearchMaximize",
]
