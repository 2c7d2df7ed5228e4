"""Whole-body pharmacokinetics: parameter derivation, simulation, metrics."""

from drugdesk.pbpk.params import (
    DEFAULT_BW,
    DEFAULT_KA,
    GFR,
    QH,
    QK,
    QP,
    AdmetProfile,
    FlowLimitExceeded,
    NonphysicalClearance,
    PbpkError,
    PbpkParams,
    VssTooSmall,
    derive_params,
)
from drugdesk.pbpk.regimen import ROUTES, BadRegimen, DoseRegimen, every, load_regimen
from drugdesk.pbpk.simulate import (
    PROFILE_HEADER,
    SAMPLE_STEP_H,
    ConcProfile,
    EmptyProfile,
    IntegrationFailure,
    NonphysicalParams,
    administered,
    load_profile_csv,
    pk_metrics,
    simulate,
    terminal_half_life,
    profile_csv_text,
    write_profile_csv,
)

__all__ = [
    "AdmetProfile",
    "BadRegimen",
    "ConcProfile",
    "DEFAULT_BW",
    "DEFAULT_KA",
    "DoseRegimen",
    "EmptyProfile",
    "FlowLimitExceeded",
    "GFR",
    "IntegrationFailure",
    "NonphysicalClearance",
    "NonphysicalParams",
    "PROFILE_HEADER",
    "PbpkError",
    "PbpkParams",
    "QH",
    "QK",
    "QP",
    "ROUTES",
    "SAMPLE_STEP_H",
    "VssTooSmall",
    "administered",
    "derive_params",
    "every",
    "load_profile_csv",
    "load_regimen",
    "pk_metrics",
    "simulate",
    "terminal_half_life",
    "profile_csv_text",
    "write_profile_csv",
]
