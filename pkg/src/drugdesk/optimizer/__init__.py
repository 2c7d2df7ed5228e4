"""Molecular optimization: mutation, GP surrogate, LCB selection, the loop."""

from drugdesk.optimizer.gp import (
    LENGTH_SCALE,
    NOISE_VAR,
    SIGNAL_VAR_FLOOR,
    DuplicateInput,
    GpModel,
    Observation,
    SingularKernel,
    gp_fit,
    matern52,
)
from drugdesk.optimizer.loop import (
    ELITE_MERGE,
    CandidateMol,
    OptimizationResult,
    OptimizerConfig,
    lcb_select,
    optimize,
)
from drugdesk.optimizer.mutate import (
    FRAGMENT_NAMES,
    FRAGMENTS,
    MAX_ATTEMPTS,
    OPERATIONS,
    InvalidMutation,
    NoValidMutants,
    attach_anchors,
    attach_fragment,
    cn_swap_sites,
    co_swap_sites,
    delete_terminal,
    generate_mutants,
    swap_cn,
    swap_ring_co,
    terminal_atoms,
)

__all__ = [
    "LENGTH_SCALE",
    "NOISE_VAR",
    "SIGNAL_VAR_FLOOR",
    "DuplicateInput",
    "GpModel",
    "Observation",
    "SingularKernel",
    "gp_fit",
    "matern52",
    "ELITE_MERGE",
    "CandidateMol",
    "OptimizationResult",
    "OptimizerConfig",
    "lcb_select",
    "optimize",
    "FRAGMENT_NAMES",
    "FRAGMENTS",
    "MAX_ATTEMPTS",
    "OPERATIONS",
    "InvalidMutation",
    "NoValidMutants",
    "attach_anchors",
    "attach_fragment",
    "cn_swap_sites",
    "co_swap_sites",
    "delete_terminal",
    "generate_mutants",
    "swap_cn",
    "swap_ring_co",
    "terminal_atoms",
]
