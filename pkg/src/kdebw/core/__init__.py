"""Kernel density estimation core."""

from kdebw.core.density import (
    KernelDensity,
    kdeCdf,
    kdePdf,
    kdePdfSecondDerivativeRoughness,
    silvermanBandwidth,
)
from kdebw.core.kernel import GAUSSIAN_KERNEL, KernelKind, KernelSpec
from kdebw.core.sample import Sample, ValidationSet

__all__ = [
    "Sample",
    "ValidationSet",
    "KernelKind",
    "KernelSpec",
    "GAUSSIAN_KERNEL",
    "KernelDensity",
    "kdePdf",
    "kdeCdf",
    "kdePdfSecondDerivativeRoughness",
    "silvermanBandwidth",
]
