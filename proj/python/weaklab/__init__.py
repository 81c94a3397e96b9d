"""Multilinear fractional operators, Muckenhoupt weight constants and weak
Lorentz quasi-norms on staggered grids, with config-driven verification
pipelines. The heavy lifting lives in the compiled ``_core`` module."""

from ._core import (
    BudgetError,
    ConfigError,
    Grid,
    GuardError,
    __version__,
    a1_constant,
    ap_constant,
    build_grid,
    distribution,
    fractional_integral,
    kernel,
    maximal,
    maximal_oracle,
    multilinear_ap_constant,
    power_identity_check,
    run_constants,
    run_oracle_check,
    run_search,
    run_sweep,
    run_verify,
    sample_power,
    weak_norm,
    weighted_l1,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "Grid",
    "GuardError",
    "__version__",
    "a1_constant",
    "ap_constant",
    "build_grid",
    "distribution",
    "fractional_integral",
    "kernel",
    "maximal",
    "maximal_oracle",
    "multilinear_ap_constant",
    "power_identity_check",
    "run_constants",
    "run_oracle_check",
    "run_search",
    "run_sweep",
    "run_verify",
    "sample_power",
    "weak_norm",
    "weighted_l1",
]
