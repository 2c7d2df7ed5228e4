"""Physicochemical descriptors computed directly from the molecular graph.

logP here is a simple additive per-atom surrogate driven by a contribution
table (TSV, overridable), and qed_like is a bounded desirability product.
Both are deliberately crude stand-ins for learned property predictors; they
are deterministic and table-driven, which is what the pipeline needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from drugdesk.molgraph.parser import Molecule

ATOMIC_WEIGHTS = {
    "H": 1.008,
    "B": 10.81,
    "C": 12.011,
    "N": 14.007,
    "O": 15.999,
    "F": 18.998,
    "P": 30.974,
    "S": 32.06,
    "Cl": 35.45,
    "Br": 79.904,
    "I": 126.904,
}

# Additive logP contributions; lowercase keys are aromatic atom classes.
DEFAULT_LOGP_TABLE = {
    "C": 0.5,
    "c": 0.3,
    "N": -0.5,
    "n": -0.3,
    "O": -0.4,
    "S": 0.4,
    "F": 0.2,
    "Cl": 0.6,
    "Br": 0.8,
    "I": 1.0,
    "P": -0.3,
}


@dataclass(frozen=True)
class DescriptorSet:
    mw: float
    logp: float
    hbd: int
    hba: int
    heavy_atoms: int
    aromatic_rings: int
    lipinski_pass_count: int
    qed_like: float


def load_logp_table(path: str | Path) -> dict[str, float]:
    """Read a `atom_class<TAB>contribution` TSV; '#' lines are comments."""
    table: dict[str, float] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 2 tab-separated fields")
        table[parts[0]] = float(parts[1])
    return table


def _atom_logp(element: str, aromatic: bool, table: dict[str, float]) -> float:
    if aromatic:
        key = element.lower()
        if key in table:
            return table[key]
    return table.get(element, 0.0)


def _gaussian(x: float, mu: float, sigma: float) -> float:
    return math.exp(-((x - mu) ** 2) / (2.0 * sigma * sigma))


def _falloff(x: float, full_until: float, zero_at: float) -> float:
    if x <= full_until:
        return 1.0
    return max(0.0, (zero_at - x) / (zero_at - full_until))


def descriptors(mol: Molecule, logp_table: dict[str, float] | None = None) -> DescriptorSet:
    table = DEFAULT_LOGP_TABLE if logp_table is None else logp_table

    mw = 0.0
    logp = 0.0
    hbd = 0
    hba = 0
    for atom in mol.atoms:
        mw += ATOMIC_WEIGHTS[atom.element] + atom.implicit_h * ATOMIC_WEIGHTS["H"]
        logp += _atom_logp(atom.element, atom.aromatic, table)
        if atom.element in ("N", "O"):
            hba += 1
            if atom.implicit_h >= 1:
                hbd += 1

    aromatic_rings = sum(
        1 for cycle in mol.rings if all(mol.atoms[i].aromatic for i in cycle)
    )
    lipinski = sum((mw <= 500.0, logp <= 5.0, hbd <= 5, hba <= 10))
    qed_terms = (
        _gaussian(mw, 300.0, 100.0),
        _gaussian(logp, 2.5, 2.0),
        _falloff(hbd, 5.0, 10.0),
        _falloff(hba, 10.0, 15.0),
    )
    product = qed_terms[0] * qed_terms[1] * qed_terms[2] * qed_terms[3]
    qed_like = product ** 0.25 if product > 0.0 else 0.0

    return DescriptorSet(
        mw=mw,
        logp=logp,
        hbd=hbd,
        hba=hba,
        heavy_atoms=len(mol.atoms),
        aromatic_rings=aromatic_rings,
        lipinski_pass_count=lipinski,
        qed_like=qed_like,
    )
