"""ADMET record type and derivation of whole-body simulation parameters.

Physiology follows standard human-adult values: fixed organ blood flows,
tissue volumes proportional to body weight. Hepatic handling uses the
well-stirred model; the intrinsic clearance is back-calculated from the
systemic clearance, which makes the round trip cl_sys -> cl_int -> cl_h
algebraically exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Organ blood flows are fixed adult values (L/h); volumes scale with
# body weight (L per kg).
QH = 90.0
QK = 66.0
QP = 50.0
GFR = 7.2
VC_PER_KG = 0.045
VL_PER_KG = 0.025
VK_PER_KG = 0.004
VP_PER_KG = 0.25
DEFAULT_BW = 60.0
DEFAULT_KA = 1.0


class PbpkError(ValueError):
    pass


class NonphysicalClearance(PbpkError):
    """Half-life or systemic clearance is zero or negative (upstream
    predictors do emit such values; they must be caught, not simulated)."""


class FlowLimitExceeded(PbpkError):
    """Systemic clearance at or above hepatic blood flow; the well-stirred
    back-calculation is singular there."""


class VssTooSmall(PbpkError):
    """Steady-state volume below the central volume gives a negative
    partition coefficient."""


@dataclass(frozen=True)
class AdmetProfile:
    """Predicted ADMET quantities for one molecule.

    ppb: plasma protein binding, fraction bound.
    vss: steady-state volume of distribution, L.
    t_half: elimination half-life, h. May be nonpositive (bad prediction).
    cl_sys: systemic clearance, L/h; derived from t_half and vss if None.
    ka: first-order absorption rate, 1/h; None means use the default.
    The remaining fields are pass-through predictions used by verdict rules.
    """

    ppb: float
    vss: float
    t_half: float
    cl_sys: float | None = None
    ka: float | None = None
    caco2: float | None = None
    logp: float | None = None
    qed: float | None = None
    bioavailability: float | None = None
    dili: float | None = None
    herg: float | None = None
    carcinogenicity: float | None = None
    cl_mic: float | None = None
    mw: float | None = None
    lipinski: float | None = None
    solubility: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.ppb <= 1.0:
            raise PbpkError(f"ppb must be a fraction in [0,1], got {self.ppb}")
        if self.vss <= 0:
            raise PbpkError(f"vss must be positive, got {self.vss}")
        for name in ("dili", "herg", "carcinogenicity", "bioavailability"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise PbpkError(f"{name} must be a probability in [0,1], got {value}")


@dataclass(frozen=True)
class PbpkParams:
    fu: float
    cl_int: float
    cl_h: float
    cl_r: float
    kp: float
    kpk: float
    ka: float
    bw: float
    vc: float
    vl: float
    vk: float
    vp: float
    qh: float = QH
    qk: float = QK
    qp: float = QP
    gfr: float = GFR


def derive_params(admet: AdmetProfile, bw: float = DEFAULT_BW) -> PbpkParams:
    """Turn an ADMET record into simulation parameters for a body of
    weight bw (kg)."""
    if bw <= 0:
        raise PbpkError(f"body weight must be positive, got {bw}")
    vc = VC_PER_KG * bw
    vl = VL_PER_KG * bw
    vk = VK_PER_KG * bw
    vp = VP_PER_KG * bw

    fu = 1.0 - admet.ppb
    if fu == 0.0:
        raise NonphysicalClearance("fully bound drug (ppb=1): unbound clearance undefined")

    if admet.cl_sys is not None:
        cl_sys = admet.cl_sys
    else:
        if admet.t_half <= 0:
            raise NonphysicalClearance(f"half-life must be positive, got {admet.t_half} h")
        cl_sys = (math.log(2) / admet.t_half) * admet.vss
    if cl_sys <= 0:
        raise NonphysicalClearance(f"systemic clearance must be positive, got {cl_sys} L/h")
    if cl_sys >= QH:
        raise FlowLimitExceeded(
            f"systemic clearance {cl_sys} L/h >= hepatic flow {QH} L/h"
        )

    if admet.vss < vc:
        raise VssTooSmall(f"vss {admet.vss} L below central volume {vc} L")

    cl_int = cl_sys * QH / (fu * (QH - cl_sys))
    cl_h = QH * fu * cl_int / (QH + fu * cl_int)
    cl_r = fu * GFR
    kp = (admet.vss - vc) / vp

    return PbpkParams(
        fu=fu,
        cl_int=cl_int,
        cl_h=cl_h,
        cl_r=cl_r,
        kp=kp,
        kpk=kp,
        ka=DEFAULT_KA if admet.ka is None else admet.ka,
        bw=bw,
        vc=vc,
        vl=vl,
        vk=vk,
        vp=vp,
    )
