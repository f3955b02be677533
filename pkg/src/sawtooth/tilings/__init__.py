"""Bead arrays on sawtooth domains: enumeration, exact sampling, lozenge geometry."""

from .patterns import (
    BeadArray,
    EnumerationLimitError,
    MomentEstimate,
    SawtoothSpec,
    bottom_bead_distribution,
    child_rows,
    count_patterns,
    enumerate_patterns,
    interlaces,
    rescale_normalizer,
    rescale_thread,
    row_distribution,
)
from .sampler import RowConditional, conditional_row_distribution, glauber, make_rng, sample_pattern

__all__ = [
    "BeadArray",
    "EnumerationLimitError",
    "MomentEstimate",
    "RowConditional",
    "SawtoothSpec",
    "bottom_bead_distribution",
    "child_rows",
    "conditional_row_distribution",
    "count_patterns",
    "enumerate_patterns",
    "glauber",
    "interlaces",
    "make_rng",
    "rescale_normalizer",
    "rescale_thread",
    "row_distribution",
    "sample_pattern",
]
