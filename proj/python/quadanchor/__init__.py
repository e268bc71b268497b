"""Exact solver for the planar four-anchor inverse-square system."""

from ._core import (
    Configuration,
    InputError,
    SolutionPair,
    SolveReport,
    ValidationReport,
    __version__,
    config_from_json,
    example,
    quartic_residual,
    report_to_json,
    solve,
    validate,
)

__all__ = [
    "Configuration",
    "InputError",
    "SolutionPair",
    "SolveReport",
    "ValidationReport",
    "__version__",
    "config_from_json",
    "example",
    "quartic_residual",
    "report_to_json",
    "solve",
    "validate",
]
