"""Arithmetic Levi-Civita connections: Python bindings to the C++ core."""

from ._arithlc import (
    ConfigError,
    ContextMismatch,
    DomainError,
    Error,
    ExactDivisionFailure,
    NotAUnit,
    PrecisionUnderflow,
    __version__,
    d_determinant,
    known_commands,
    run_config,
    section_check,
    solve_lambda,
    star_curvature,
    verify_conformal,
)

__all__ = [
    "ConfigError",
    "ContextMismatch",
    "DomainError",
    "Error",
    "ExactDivisionFailure",
    "NotAUnit",
    "PrecisionUnderflow",
    "__version__",
    "d_determinant",
    "known_commands",
    "run_config",
    "section_check",
    "solve_lambda",
    "star_curvature",
    "verify_conformal",
]
