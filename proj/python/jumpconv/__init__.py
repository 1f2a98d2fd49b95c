"""Simulation and verification toolkit for local martingales with jumps."""

from ._jumpconv import (
    ConfigError,
    IoError,
    __version__,
    analyze,
    catalog_names,
    compensator_integral,
    describe,
    generate,
    kappa,
    mean_test,
    run_experiment,
    run_suite,
    wilson,
)

__all__ = [
    "ConfigError",
    "IoError",
    "__version__",
    "analyze",
    "catalog_names",
    "compensator_integral",
    "describe",
    "generate",
    "kappa",
    "mean_test",
    "run_experiment",
    "run_suite",
    "wilson",
]
