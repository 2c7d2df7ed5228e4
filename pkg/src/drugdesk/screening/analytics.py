"""Screening analytics: enrichment, novelty zones, ligand efficiency."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from drugdesk.molgraph import Fingerprint, SmilesError, canonical_smiles, tanimoto
from drugdesk.screening.library import ScoredCandidate

SCAFFOLD_HOP_CUTOFF = 0.4


class NoActives(ValueError):
    pass


class EmptyReference(ValueError):
    pass


class ZeroAtoms(ValueError):
    pass


@dataclass(frozen=True)
class EnrichmentPoint:
    fraction: float
    recovery: float
    ef: float


def enrichment_analysis(
    ranked: Sequence[ScoredCandidate],
    actives: Iterable[str] | None,
    fractions: Sequence[float],
) -> list[EnrichmentPoint]:
    """Recovery and enrichment factor at each library fraction.

    actives: SMILES considered true binders, canonicalized before matching;
    None means use the 'active' labels already on the candidates. recovery@f
    counts how many actives sit in the top ceil(f*N) ranks, divided by the
    active total; EF@f = recovery@f / f.
    """
    if actives is None:
        active_set = {c.canonical for c in ranked if c.label == "active"}
    else:
        active_set = set()
        for smiles in actives:
            try:
                active_set.add(canonical_smiles(smiles))
            except SmilesError:
                active_set.add(smiles)
    total_actives = sum(1 for c in ranked if c.canonical in active_set)
    if total_actives == 0:
        raise NoActives("no active molecule present in the ranked library")
    for f in fractions:
        if not 0.0 < f <= 1.0:
            raise ValueError(f"fractions must be in (0, 1], got {f}")
    n = len(ranked)
    points = []
    for f in sorted(fractions):
        top = math.ceil(f * n)
        hits = sum(1 for c in ranked[:top] if c.canonical in active_set)
        recovery = hits / total_actives
        points.append(EnrichmentPoint(fraction=f, recovery=recovery, ef=recovery / f))
    return points


@dataclass(frozen=True)
class NoveltyRecord:
    max_tanimoto: float
    zone: str  # "scaffold_hopping" below the cutoff, else "known_scaffold"


def novelty_report(
    generated: Sequence[Fingerprint],
    references: Sequence[Fingerprint],
) -> list[NoveltyRecord]:
    """Max similarity of each generated fingerprint to the reference set,
    labeled scaffold_hopping when it stays under 0.4."""
    if not references:
        raise EmptyReference("reference fingerprint set is empty")
    records = []
    for fp in generated:
        best = max(tanimoto(fp, ref) for ref in references)
        zone = "scaffold_hopping" if best < SCAFFOLD_HOP_CUTOFF else "known_scaffold"
        records.append(NoveltyRecord(max_tanimoto=best, zone=zone))
    return records


def ligand_efficiency(score: float, heavy_atoms: int) -> float:
    """-score per heavy atom; 0.5 is the conventional hit-quality line."""
    if heavy_atoms < 1:
        raise ZeroAtoms("heavy atom count must be >= 1")
    return -score / heavy_atoms


def write_enrichment_csv(points: Sequence[EnrichmentPoint], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fraction", "recovery", "ef"])
        for p in points:
            writer.writerow([repr(p.fraction), repr(p.recovery), repr(p.ef)])
