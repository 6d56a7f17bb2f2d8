"""Petz-Augustin capacity of classical-quantum channels.

Two algorithms with non-asymptotic guarantees: a universal fast gradient
method on the exponentiated Renyi objective, and entropic mirror descent
driven by a Thompson-contractive fixed-point solver for the Augustin
information.
"""

from .augustin import (
    FixedPointOutput,
    augustin_information,
    contraction_factor,
    fixed_point_step,
    solve_augustin,
)
from .channel import (
    CQChannel,
    ClassicalChannel,
    embed_classical,
    extract_classical,
    load_channel,
    random_channel,
    save_channel,
    validate,
)
from .matcore import (
    herm_eig,
    mat_fun,
    mat_power,
    petz_renyi_divergence,
    schatten_norm,
    thompson_metric,
)
from .renyi import (
    HolderParams,
    holder_constants,
    holder_ratio,
    renyi_gradient,
    renyi_information,
    renyi_objective,
)
from .solvers import (
    SolverConfig,
    SolverResult,
    TraceRecord,
    bregman_prox,
    emd_capacity,
    epsilon_balanced,
    fgm_capacity,
    relative_smoothness_check,
)

__version__ = "0.1.0"

__all__ = [
    "CQChannel",
    "ClassicalChannel",
    "FixedPointOutput",
    "HolderParams",
    "SolverConfig",
    "SolverResult",
    "TraceRecord",
    "augustin_information",
    "bregman_prox",
    "contraction_factor",
    "embed_classical",
    "emd_capacity",
    "epsilon_balanced",
    "extract_classical",
    "fgm_capacity",
    "fixed_point_step",
    "herm_eig",
    "holder_constants",
    "holder_ratio",
    "load_channel",
    "mat_fun",
    "mat_power",
    "petz_renyi_divergence",
    "random_channel",
    "relative_smoothness_check",
    "renyi_gradient",
    "renyi_information",
    "renyi_objective",
    "save_channel",
    "schatten_norm",
    "solve_augustin",
    "thompson_metric",
    "validate",
]
