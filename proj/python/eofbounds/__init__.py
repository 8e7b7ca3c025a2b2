"""Entanglement-of-formation bounds from purity measurements."""

from ._core import (
    DimensionError,
    Envelopes,
    InvariantError,
    ParseError,
    bounds,
    build_envelopes,
    caf_from_omega,
    convex_roof_upper,
    eof_bounds_from_lambdas,
    estimated_bounds,
    example_state,
    partial_trace,
    partial_transpose,
    realign,
    wootters_eof,
)

__all__ = [
    "DimensionError",
    "Envelopes",
    "InvariantError",
    "ParseError",
    "bounds",
    "build_envelopes",
    "caf_from_omega",
    "convex_roof_upper",
    "eof_bounds_from_lambdas",
    "estimated_bounds",
    "example_state",
    "partial_trace",
    "partial_transpose",
    "realign",
    "wootters_eof",
]
