"""Python front end to the wblab C++ core.

Arrays are numpy float64; a 1D array of length n is a field on [0, L), a square 2D
array one on [0, L)^2. Model names are whitham1d, wb1d and wb2d.
"""

from ._wblab import (
    ConfigError,
    WblabError,
    apply_symbol,
    check_admissible,
    decay_rate,
    decay_test,
    diagonalize,
    forward,
    initial_state,
    lifespan_sweep,
    load_constants,
    lp_norm,
    m_symbol,
    norms,
    propagate,
    run,
    scaling_error,
    simulate,
    sobolev_norm,
    strichartz_ratio,
    subcommands,
    t_mu,
    theorem_time,
)

__all__ = [
    "ConfigError",
    "WblabError",
    "apply_symbol",
    "check_admissible",
    "decay_rate",
    "decay_test",
    "diagonalize",
    "forward",
    "initial_state",
    "lifespan_sweep",
    "load_constants",
    "lp_norm",
    "m_symbol",
    "norms",
    "propagate",
    "run",
    "scaling_error",
    "simulate",
    "sobolev_norm",
    "strichartz_ratio",
    "subcommands",
    "t_mu",
    "theorem_time",
]
