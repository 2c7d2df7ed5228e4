"""The optimization loop: mutate, select by acquisition, evaluate, merge.

Per generation every population member is mutated; the Gaussian process
(fit on everything evaluated so far) picks up to select_budget candidates
by lower confidence bound; those get true objective evaluations; the five
best newcomers join the population.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from drugdesk.hashing import hash64
from drugdesk.molgraph import (
    Fingerprint,
    Molecule,
    canonical_form,
    descriptors,
    morgan_fingerprint,
    parse_smiles,
)
from drugdesk.optimizer.gp import GpModel, Observation, gp_fit
from drugdesk.optimizer.mutate import NoValidMutants, generate_mutants
from drugdesk.pharmacologist import PenaltySpec
from drugdesk.screening import Pocket, surrogate_affinity

ELITE_MERGE = 5


@dataclass(frozen=True)
class OptimizerConfig:
    generations: int = 3
    mutants_per_parent: int = 5
    select_budget: int = 10
    seed: int = 0

    def __post_init__(self):
        for name in ("generations", "mutants_per_parent", "select_budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


@dataclass(frozen=True)
class CandidateMol:
    canonical: str
    molecule: Molecule
    fingerprint: Fingerprint


@dataclass(frozen=True)
class OptimizationResult:
    best: Observation
    top5: tuple[Observation, ...]
    history: tuple[float, ...]
    seed: int
    penalties: PenaltySpec | None

    def __post_init__(self):
        if self.top5 and self.best != self.top5[0]:
            raise ValueError("best must head the top-5 list")


def lcb_select(
    model: GpModel,
    candidates: Sequence[CandidateMol],
    k: int,
    kappa: float = 1.0,
) -> list[CandidateMol]:
    """Ascending lower confidence bound mu - kappa*sigma; ties broken by the
    canonical-smiles hash so the order never depends on list position."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not candidates:
        return []
    mean, var = model.predict([c.fingerprint for c in candidates])
    lcb = mean - kappa * var**0.5
    order = sorted(range(len(candidates)), key=lambda i: (lcb[i], hash64(candidates[i].canonical)))
    return [candidates[i] for i in order[:k]]


def _objective(mol: Molecule, pocket: Pocket, penalties: PenaltySpec | None) -> float:
    score = surrogate_affinity(mol, pocket)
    if penalties is not None:
        score += penalties.penalty(descriptors(mol))
    return score


def optimize(
    seeds: Sequence[str],
    pocket: Pocket,
    penalties: PenaltySpec | None = None,
    config: OptimizerConfig = OptimizerConfig(),
    log_dir: str | Path | None = None,
) -> OptimizationResult:
    """Run the full loop from SMILES seeds. Seeds sharing a canonical form
    collapse to one. If some generation cannot produce a single valid
    mutant, NoValidMutants is raised with .partial holding the result of
    the completed generations."""
    molecules: dict[str, Molecule] = {}
    for smiles in seeds:
        mol = parse_smiles(smiles)
        molecules.setdefault(canonical_form(mol), mol)
    if not molecules:
        raise ValueError("at least one seed molecule is required")

    evaluated: dict[str, Observation] = {}
    log_rows: list[tuple[int, str, str, int]] = []
    for canonical, mol in molecules.items():
        obs = Observation(canonical, morgan_fingerprint(mol), _objective(mol, pocket, penalties))
        evaluated[canonical] = obs
        log_rows.append((0, canonical, repr(obs.objective), 1))

    population = list(molecules)
    history: list[float] = []

    def result() -> OptimizationResult:
        ranked = sorted(evaluated.values(), key=lambda o: (o.objective, o.canonical))
        return OptimizationResult(
            best=ranked[0],
            top5=tuple(ranked[:ELITE_MERGE]),
            history=tuple(history),
            seed=config.seed,
            penalties=penalties,
        )

    for gen in range(1, config.generations + 1):
        parents = [molecules[c] for c in population]
        try:
            mutants = generate_mutants(
                parents, config.mutants_per_parent, hash64("mutants", config.seed, gen)
            )
        except NoValidMutants as exc:
            partial = result()
            if log_dir is not None:
                _write_logs(log_dir, config, log_rows, partial)
            raise NoValidMutants(str(exc), partial=partial) from None

        pool: list[CandidateMol] = []
        seen = set(evaluated)
        for mol in mutants:
            canonical = canonical_form(mol)
            if canonical in seen:
                continue
            seen.add(canonical)
            pool.append(CandidateMol(canonical, mol, morgan_fingerprint(mol)))

        model = gp_fit(tuple(evaluated.values()))
        chosen = lcb_select(model, pool, config.select_budget)
        newcomers: list[Observation] = []
        chosen_set = {c.canonical for c in chosen}
        for cand in pool:
            if cand.canonical in chosen_set:
                obs = Observation(
                    cand.canonical,
                    cand.fingerprint,
                    _objective(cand.molecule, pocket, penalties),
                )
                evaluated[cand.canonical] = obs
                molecules[cand.canonical] = cand.molecule
                newcomers.append(obs)
                log_rows.append((gen, cand.canonical, repr(obs.objective), 1))
            else:
                log_rows.append((gen, cand.canonical, "", 0))

        newcomers.sort(key=lambda o: (o.objective, o.canonical))
        population.extend(o.canonical for o in newcomers[:ELITE_MERGE])
        history.append(min(o.objective for o in evaluated.values()))

    final = result()
    if log_dir is not None:
        _write_logs(log_dir, config, log_rows, final)
    return final


def _write_logs(
    log_dir: str | Path,
    config: OptimizerConfig,
    rows: list[tuple[int, str, str, int]],
    res: OptimizationResult,
) -> Path:
    stamp = time.strftime("%Y%m%dT%H%M%SZ", time.gmtime())
    run_id = f"{hash64('run', config.seed) & 0xFFFFFFFF:08x}"
    out = Path(log_dir) / f"run_{stamp}_{run_id}"
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "generations.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["gen", "candidate", "objective", "selected"])
        writer.writerows(rows)
    record = {
        "best": {"smiles": res.best.canonical, "objective": res.best.objective},
        "top5": [{"smiles": o.canonical, "objective": o.objective} for o in res.top5],
        "history": list(res.history),
        "seed": res.seed,
        "penalties": [
            [t.descriptor, t.threshold, t.direction, t.weight]
            for t in (res.penalties.terms if res.penalties else ())
        ],
    }
    (out / "result.json").write_text(json.dumps(record, indent=2) + "\n")
    return out
