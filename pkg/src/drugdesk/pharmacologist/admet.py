"""ADMET acquisition: bundled record lookup or a deterministic descriptor stub.

Record files hold one block per molecule, `key: value` lines separated by
blank lines, starting with the `smiles` key. Field names follow the upstream
predictor's JSON (molecular_weight, logP, Lipinski, QED, Carcinogens_Lagunin,
DILI, Bioavailability_Ma) plus plainly named pharmacokinetic inputs.
"""

from __future__ import annotations

import math
from functools import lru_cache
from pathlib import Path

from drugdesk.molgraph import DescriptorSet, canonical_smiles, descriptors, parse_smiles
from drugdesk.pbpk import AdmetProfile


class FixtureMiss(KeyError):
    """Molecule absent from the record file and the stub is disabled."""


class BadRecord(ValueError):
    pass


# record-file key -> AdmetProfile field
FIELD_MAP = {
    "molecular_weight": "mw",
    "logP": "logp",
    "Lipinski": "lipinski",
    "QED": "qed",
    "Carcinogens_Lagunin": "carcinogenicity",
    "DILI": "dili",
    "Bioavailability_Ma": "bioavailability",
    "PPB": "ppb",
    "Vss": "vss",
    "Half_Life": "t_half",
    "Clearance_Hepatic": "cl_sys",
    "Clearance_Microsome": "cl_mic",
    "Caco2": "caco2",
    "hERG": "herg",
    "Solubility": "solubility",
    "Ka": "ka",
}


def load_admet_records(path: str | Path) -> dict[str, AdmetProfile]:
    """Parse a record file into {canonical smiles: profile}."""
    blocks: list[list[tuple[int, str, str]]] = [[]]
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        if line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep or not value.strip():
            raise BadRecord(f"{path}:{lineno}: expected 'key: value', got {line!r}")
        blocks[-1].append((lineno, key.strip(), value.strip()))

    records: dict[str, AdmetProfile] = {}
    for block in blocks:
        if not block:
            continue
        lineno, first_key, smiles = block[0]
        if first_key != "smiles":
            raise BadRecord(f"{path}:{lineno}: record must start with 'smiles', got {first_key!r}")
        fields: dict[str, float] = {}
        for lineno, key, value in block[1:]:
            if key == "smiles":
                raise BadRecord(f"{path}:{lineno}: record missing blank-line separator")
            if key not in FIELD_MAP:
                raise BadRecord(f"{path}:{lineno}: unknown field {key!r}")
            try:
                fields[FIELD_MAP[key]] = float(value)
            except ValueError:
                raise BadRecord(f"{path}:{lineno}: {key} value {value!r} is not a number") from None
        canonical = canonical_smiles(smiles)
        if canonical in records:
            raise BadRecord(f"{path}:{lineno}: duplicate record for {smiles!r}")
        records[canonical] = AdmetProfile(**fields)
    return records


@lru_cache(maxsize=8)
def _cached_records(path: str) -> dict[str, AdmetProfile]:
    return load_admet_records(path)


def _sigmoid(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(x, lo), hi)


def stub_admet(desc: DescriptorSet) -> AdmetProfile:
    """Deterministic descriptor-driven stand-in for a learned predictor.

    The formulas are not calibrated to any dataset; they only need to be
    smooth, bounded, and move in the pharmacologically expected direction
    so that verdict rules and penalty feedback have something to act on.
    """
    return AdmetProfile(
        ppb=_clamp(0.4 + 0.1 * desc.logp, 0.05, 0.99),
        vss=5.0 + 0.5 * desc.heavy_atoms,
        t_half=2.0 + 0.4 * desc.heavy_atoms,
        caco2=-4.0 - 0.35 * desc.hbd - 0.10 * desc.hba + 0.15 * desc.logp,
        logp=desc.logp,
        qed=desc.qed_like,
        bioavailability=_sigmoid(0.02 * (500.0 - desc.mw)),
        dili=_sigmoid(desc.logp - 4.0),
        herg=_sigmoid(0.4 * desc.aromatic_rings + 0.2 * desc.logp - 3.0),
        carcinogenicity=_sigmoid(0.3 * desc.aromatic_rings - 2.5),
        mw=desc.mw,
        lipinski=float(desc.lipinski_pass_count),
        solubility=0.5 - 0.5 * desc.logp,
    )


def predict_admet(smiles: str, source: str | Path = "stub") -> AdmetProfile:
    """Look the molecule up in a record file, or compute the stub profile.

    source is either the literal string "stub" or a path to a record file;
    with a file the stub is disabled and unknown molecules raise FixtureMiss.
    """
    if source == "stub":
        return stub_admet(descriptors(parse_smiles(smiles)))
    records = _cached_records(str(source))
    canonical = canonical_smiles(smiles)
    try:
        return records[canonical]
    except KeyError:
        raise FixtureMiss(f"no record for {canonical!r} in {source}") from None
