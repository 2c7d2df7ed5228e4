"""Deterministic candidate ranking, replacing an LLM review step.

score = alpha * (#distinct evidence paths)
      + beta / (1 + drug_degree)
      + gamma * [has pdb id]

Candidates without a structure are kept but flagged so downstream stages
can skip them when a structure is required.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from drugdesk.kgraph.paths import EvidencePath
from drugdesk.kgraph.store import GraphStore


@dataclass(frozen=True)
class TargetCandidate:
    node_id: str
    name: str
    evidence_paths: tuple[EvidencePath, ...]
    relevance_score: float
    novelty_score: float
    score: float
    pdb_id: str | None

    @property
    def has_structure(self) -> bool:
        return self.pdb_id is not None


def load_pdb_map(path: str | Path) -> dict[str, str]:
    """`gene<TAB>pdb_id` rows; '#' lines are comments."""
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected gene<TAB>pdb_id")
        mapping[parts[0]] = parts[1]
    return mapping


def critic_rank(
    candidates: dict[str, list[EvidencePath]],
    context: str,
    store: GraphStore,
    pdb_map: dict[str, str] | None = None,
    alpha: float = 1.0,
    beta: float = 2.0,
    gamma: float = 1.0,
) -> list[TargetCandidate]:
    """Rank candidate nodes (id -> evidence paths) by the score above.

    context is carried along for reporting only; the ranking never reads it.
    Descending score, ties by node name.
    """
    pdb_map = pdb_map or {}
    ranked: list[TargetCandidate] = []
    for nid, paths in candidates.items():
        if not paths:
            raise ValueError(f"candidate {nid!r} has no evidence paths")
        node = store.nodes[nid]
        distinct = len(set(paths))
        drug_degree = store.degree(nid, "DRUG_PROTEIN", "Drug")
        pdb_id = pdb_map.get(node.name)
        relevance = alpha * distinct
        novelty = beta / (1.0 + drug_degree)
        total = relevance + novelty + (gamma if pdb_id is not None else 0.0)
        ranked.append(
            TargetCandidate(
                node_id=nid,
                name=node.name,
                evidence_paths=tuple(sorted(set(paths), key=lambda p: (p.nodes, p.relations))),
                relevance_score=relevance,
                novelty_score=novelty,
                score=total,
                pdb_id=pdb_id,
            )
        )
    ranked.sort(key=lambda c: (-c.score, c.name))
    return ranked
