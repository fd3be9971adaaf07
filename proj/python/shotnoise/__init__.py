"""Stationary densities of shot-noise recurrences.

Thin re-export of the compiled module; see the C++ headers for the
numerical contracts.
"""

try:
    from . import _core as _impl
except ImportError:  # development layout: compiled module on PYTHONPATH
    import _core as _impl
import sys as _sys

_sys.modules[__name__ + "._core"] = _impl

from ._core import (
    FormulaMismatch,
    IllConditioned,
    Inverter,
    TriggeredModel,
    cji,
    cjin,
    clausen2,
    density_tail,
    elliptic_k,
    f0_simple,
    f0_three_uniforms,
    f0_triggered,
    f_waiting_time,
    find_saddle,
    g1_density,
    ks_distance,
    normalization_constant,
    pfq,
    polygamma,
    sample_moment,
    simulate_recurrence,
    stationary_density,
)

EXAMPLE_A = (0.25, 0.75)
EXAMPLE_B = (0.5, 0.5, 1.0)

__all__ = [
    "FormulaMismatch",
    "IllConditioned",
    "Inverter",
    "TriggeredModel",
    "EXAMPLE_A",
    "EXAMPLE_B",
    "cji",
    "cjin",
    "clausen2",
    "density_tail",
    "elliptic_k",
    "f0_simple",
    "f0_three_uniforms",
    "f0_triggered",
    "f_waiting_time",
    "find_saddle",
    "g1_density",
    "ks_distance",
    "normalization_constant",
    "pfq",
    "polygamma",
    "sample_moment",
    "simulate_recurrence",
    "stationary_density",
]

__version__ = "0.1.0"
