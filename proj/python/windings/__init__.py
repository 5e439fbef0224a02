"""Windings of planar stable processes.

Thin layer over the C++ core: constants of the angular Levy process, exact
samplers, path simulation with winding and clock series, and the experiment
suites (reports come back as dictionaries).
"""

import json

from ._core import (
    ConfigError,
    angular_density,
    characteristic_exponent,
    constants,
    format_report,
    generate_path,
    integral_test,
    sample_positive_stable,
    sample_symmetric_stable,
    simulate_rho,
    suite_names,
)
from . import _core

__all__ = [
    "ConfigError",
    "angular_density",
    "characteristic_exponent",
    "constants",
    "format_report",
    "generate_path",
    "integral_test",
    "run_suite",
    "sample_positive_stable",
    "sample_symmetric_stable",
    "simulate_rho",
    "suite_names",
]


def run_suite(name, config=None):
    """Run an experiment suite; `config` is a dict in the JSON config schema."""
    text = "" if config is None else json.dumps(config)
    return json.loads(_core.run_suite(name, text))
