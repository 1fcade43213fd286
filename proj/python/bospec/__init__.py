"""Pseudo-spectral simulation and verification toolkit for the periodic
Benjamin-Ono equation.

Fields cross the boundary as flat sample lists on the uniform grid of the
circle of radius ``lam``; the grid size is ``len(samples)``.  Everything
heavy runs in the compiled extension.
"""

from ._core import (
    BlowupError,
    ConfigError,
    MeanNotZeroError,
    __version__,
    closed_form,
    describe,
    evolve,
    gauge_residuals,
    illposed_sweep,
    monitor,
    norm_report,
    picard_series,
    run_config,
    strichartz_ratios,
    trig_sum,
)

__all__ = [
    "BlowupError",
    "ConfigError",
    "MeanNotZeroError",
    "__version__",
    "closed_form",
    "describe",
    "evolve",
    "gauge_residuals",
    "illposed_sweep",
    "monitor",
    "norm_report",
    "picard_series",
    "run_config",
    "strichartz_ratios",
    "trig_sum",
]
