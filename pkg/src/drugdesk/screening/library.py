"""Library screening: parse, score, rank, and report skips."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from drugdesk.molgraph import DescriptorSet, SmilesError, descriptors, parse_smiles
from drugdesk.molgraph.canonical import canonical_form
from drugdesk.screening.pocket import Pocket
from drugdesk.screening.surrogate import surrogate_affinity

LABELS = ("active", "inactive")


class BadLabel(ValueError):
    pass


class EmptyLibrary(ValueError):
    pass


@dataclass(frozen=True)
class ScoredCandidate:
    canonical: str
    score: float
    label: str | None
    descriptors: DescriptorSet


@dataclass(frozen=True)
class SkipRecord:
    entry: str
    reason: str


@dataclass(frozen=True)
class ScreenResult:
    ranked: tuple[ScoredCandidate, ...]
    skipped: tuple[SkipRecord, ...]


def screen_library(
    entries: Iterable[str | tuple[str, str | None]],
    pocket: Pocket,
) -> ScreenResult:
    """Score every entry against the pocket and rank ascending (best first).

    Entries are SMILES strings or (smiles, label) pairs with label in
    {active, inactive}. Invalid entries do not abort the screen; each one
    becomes a SkipRecord instead. Ties in score break on canonical SMILES.
    """
    scored: list[ScoredCandidate] = []
    skipped: list[SkipRecord] = []
    count = 0
    for entry in entries:
        count += 1
        smiles, label = entry if isinstance(entry, tuple) else (entry, None)
        try:
            if label is not None and label not in LABELS:
                raise BadLabel(f"label must be one of {LABELS}, got {label!r}")
            mol = parse_smiles(smiles)
            scored.append(
                ScoredCandidate(
                    canonical=canonical_form(mol),
                    score=surrogate_affinity(mol, pocket),
                    label=label,
                    descriptors=descriptors(mol),
                )
            )
        except (SmilesError, BadLabel) as exc:
            skipped.append(SkipRecord(entry=smiles, reason=str(exc)))
    if count == 0:
        raise EmptyLibrary("no entries to screen")
    scored.sort(key=lambda c: (c.score, c.canonical))
    return ScreenResult(tuple(scored), tuple(skipped))


def load_library(path: str | Path) -> list[tuple[str, str | None]]:
    """Read `smiles[<TAB>label]` lines; # starts a comment."""
    items: list[tuple[str, str | None]] = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" in line:
            smiles, label = line.split("\t", 1)
            items.append((smiles.strip(), label.strip()))
        else:
            items.append((line, None))
    return items


def write_ranked_csv(result: ScreenResult, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "canonical_smiles", "score", "label"])
        for rank, cand in enumerate(result.ranked, start=1):
            writer.writerow([rank, cand.canonical, repr(cand.score), cand.label or ""])
