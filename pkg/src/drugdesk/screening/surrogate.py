"""Deterministic stand-in for a docking score.

The score rewards polar complementarity with the pocket and penalizes bulk
beyond 35 heavy atoms. A hash-derived jitter term individualizes molecules
that tie on descriptors, so rankings are stable but not degenerate. Lower
is better, in the same spirit as a docking energy.

The pocket center plays no role in the formula; it exists so pocket files
round-trip and reports can show real coordinates.
"""

from __future__ import annotations

from drugdesk.hashing import jitter
from drugdesk.molgraph import Molecule, canonical_form, descriptors
from drugdesk.screening.pocket import Pocket

SIZE_CAP = 35          # heavy atoms counted at full weight
SIZE_PENALTY = 0.08    # per heavy atom beyond the cap
JITTER_SCALE = 0.25


def surrogate_affinity(mol: Molecule, pocket: Pocket) -> float:
    """Score one molecule against one pocket; lower is better."""
    d = descriptors(mol)
    hac = d.heavy_atoms
    reward = (
        0.35 * min(hac, SIZE_CAP)
        + 1.2 * min(d.hbd, pocket.polar_sites)
        + 1.0 * min(d.hba, pocket.acceptor_sites)
        + 0.8 * d.aromatic_rings
    )
    penalty = SIZE_PENALTY * max(0, hac - SIZE_CAP)
    noise = JITTER_SCALE * jitter(canonical_form(mol), pocket.seed)
    return -reward + penalty + noise
