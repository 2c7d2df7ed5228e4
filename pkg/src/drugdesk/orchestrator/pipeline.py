"""The fixed Biologist -> Chemist -> Pharmacologist workflow.

Stage order never varies. Human input enters at exactly two gates: target
approval after ranking, and optional free-text steering after a rejection
that continues. Every stage action is traced; any stage error is recorded
as that stage's exit event and converts the run into a failure result that
references the causal event.
"""

from __future__ import annotations

import dataclasses
import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from drugdesk.fixtures import UnknownFixture, fixture_path
from drugdesk.hashing import hash64
from drugdesk.kgraph import (
    EvidencePath,
    GraphStore,
    TargetCandidate,
    critic_rank,
    entity_linking,
    filter_nodes_without_relation,
    find_related_paths,
    ingest_edges,
    load_pdb_map,
)
from drugdesk.optimizer import OptimizerConfig, optimize
from drugdesk.orchestrator.providers import (
    DecisionProvider,
    default_steering_map,
    steering_to_categories,
    validate_decision,
)
from drugdesk.orchestrator.state import (
    BIOLOGIST,
    CHEMIST,
    GUARDRAIL,
    ORCHESTRATOR,
    PHARMACOLOGIST,
    AgentState,
    Next,
    TraceEvent,
    TraceRecorder,
    guardrail_validate,
    normalize_input,
    should_continue,
)
from drugdesk.pbpk import ConcProfile, DoseRegimen, PbpkError, ROUTES, derive_params
from drugdesk.pbpk.simulate import pk_metrics, simulate
from drugdesk.pharmacologist import (
    Verdict,
    categories_to_penalties,
    evaluate,
    predict_admet,
)
from drugdesk.screening import Pocket, load_library, load_pockets, screen_library


class NoTargetFound(RuntimeError):
    """The task text names nothing the graph knows, or no ranked candidate
    has a structure to work against."""


class MissingPocket(RuntimeError):
    """The chosen structure has no pocket row in the fixture set."""


class NoCandidate(RuntimeError):
    """Structure generation produced nothing that parses."""


class BadRequestConfig(ValueError):
    pass


@dataclass(frozen=True)
class FixtureSet:
    """One named, self-contained dataset a run executes against."""

    name: str
    edges: Path
    synonyms: Path
    pdb_map: Path
    pockets: Path
    pocket_rows: Mapping[str, int]  # pdb id -> row index in the pockets file
    seeds: Path
    admet_source: str | Path  # record file, or "stub" for the descriptor stub
    default_seed: int


def _bundled(name: str) -> Path:
    return fixture_path(name)


FIXTURE_SETS: dict[str, FixtureSet] = {
    "diabetes": FixtureSet(
        name="diabetes",
        edges=_bundled("diabetes_edges.tsv"),
        synonyms=_bundled("diabetes_synonyms.tsv"),
        pdb_map=_bundled("pdb_ids.tsv"),
        pockets=_bundled("pockets.txt"),
        pocket_rows={"2h8r": 0},
        seeds=_bundled("seed_molecules.txt"),
        admet_source=_bundled("admet_records.txt"),
        default_seed=14,
    ),
    "pancreatic": FixtureSet(
        name="pancreatic",
        edges=_bundled("pancreatic_edges.tsv"),
        synonyms=_bundled("pancreatic_synonyms.tsv"),
        pdb_map=_bundled("pdb_ids.tsv"),
        pockets=_bundled("pockets.txt"),
        pocket_rows={"2DM2": 1},
        seeds=_bundled("seed_molecules.txt"),
        admet_source="stub",
        default_seed=4,
    ),
}


def fixture_set(name: str) -> FixtureSet:
    try:
        return FIXTURE_SETS[name]
    except KeyError:
        raise UnknownFixture(name) from None


@dataclass(frozen=True)
class PipelineRequest:
    task: str
    fixture: str = "diabetes"
    seed: int | None = None  # None: the fixture set's default
    max_iterations: int = 3
    generations: int = 3
    mutants_per_parent: int = 5
    select_budget: int = 10
    dose_mg: float = 200.0
    route: str = "oral"
    horizon_h: float = 24.0
    body_weight: float = 60.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise BadRequestConfig(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.route not in ROUTES:
            raise BadRequestConfig(f"route must be one of {ROUTES}, got {self.route!r}")


_REQUEST_FIELDS = {f.name for f in dataclasses.fields(PipelineRequest)}
_STR_FIELDS = {"task", "fixture", "route"}
_INT_FIELDS = {"seed", "max_iterations", "generations", "mutants_per_parent", "select_budget"}


def request_from_dict(doc, where: str = "request") -> PipelineRequest:
    """Build a PipelineRequest from an untrusted JSON-shaped mapping."""
    if not isinstance(doc, dict):
        raise BadRequestConfig(f"{where}: expected a JSON object")
    unknown = set(doc) - _REQUEST_FIELDS
    if unknown:
        raise BadRequestConfig(f"{where}: unknown keys {sorted(unknown)}")
    if "task" not in doc:
        raise BadRequestConfig(f"{where}: missing 'task'")
    for key, value in doc.items():
        if key in _STR_FIELDS:
            if not isinstance(value, str):
                raise BadRequestConfig(f"{where}: {key} must be a string")
        elif key in _INT_FIELDS:
            if value is None and key == "seed":
                continue
            if isinstance(value, bool) or not isinstance(value, int):
                raise BadRequestConfig(f"{where}: {key} must be an integer")
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise BadRequestConfig(f"{where}: {key} must be a number")
    return PipelineRequest(**doc)


def load_request(path: str | Path) -> PipelineRequest:
    """Read a run configuration file (JSON object of request fields)."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadRequestConfig(f"{path}: {exc}") from None
    return request_from_dict(doc, where=str(path))


@dataclass(frozen=True)
class RunResult:
    success: bool
    smiles: str | None
    target: str | None
    iterations: int
    failure_reason: str | None
    verdicts: tuple[Verdict, ...]
    trace: tuple[TraceEvent, ...]
    profiles: Mapping[str, ConcProfile]

    def to_json(self) -> dict:
        return {
            "success": self.success,
            "smiles": self.smiles,
            "target": self.target,
            "iterations": self.iterations,
            "failure_reason": self.failure_reason,
            "verdicts": [
                {
                    "decision": v.decision,
                    "categories": list(v.categories),
                    "feedback": v.feedback,
                    "pk": dict(v.pk) if v.pk is not None else None,
                }
                for v in self.verdicts
            ],
            "profiles": sorted(self.profiles),
        }


def write_result_json(result: RunResult, path: str | Path) -> None:
    Path(path).write_text(json.dumps(result.to_json(), sort_keys=True, indent=2) + "\n")


@contextmanager
def _stage(trace: TraceRecorder, node: str, enter_payload: dict):
    """Emit the enter event, guarantee a matching exit event.

    The yielded box's ``payload`` becomes the exit payload; if the stage
    raises, the exit records the error instead and the exception continues.
    """
    trace.emit(node, "enter", enter_payload)
    box = type("ExitBox", (), {"payload": {}})()
    try:
        yield box
    except Exception as exc:
        trace.emit(node, "exit", {"error": type(exc).__name__, "message": str(exc)})
        raise
    trace.emit(node, "exit", box.payload)


def _admet_view(admet) -> dict:
    return {k: v for k, v in dataclasses.asdict(admet).items() if v is not None}


def _path_view(path: EvidencePath, store: GraphStore) -> dict:
    return {
        "nodes": [store.nodes[n].name for n in path.nodes],
        "relations": list(path.relations),
    }


def _candidate_view(cand: TargetCandidate, store: GraphStore) -> dict:
    return {
        "node_id": cand.node_id,
        "name": cand.name,
        "score": cand.score,
        "relevance": cand.relevance_score,
        "novelty": cand.novelty_score,
        "pdb_id": cand.pdb_id,
        "paths": [_path_view(p, store) for p in cand.evidence_paths],
    }


def _run_biologist(state: AgentState, fixtures: FixtureSet) -> tuple[TargetCandidate, list[dict]]:
    """Target identification: link the task text into the graph, walk
    disease-protein paths, drop already-drugged proteins, rank the rest."""
    trace = state.trace
    with _stage(trace, BIOLOGIST, {"task": state.task}) as box:
        store = ingest_edges(fixtures.edges, fixtures.synonyms)
        trace.emit(BIOLOGIST, "tool_call", {
            "tool": "ingest_edges",
            "nodes": len(store.nodes),
            "edges": len(store.edges),
        })

        mention = _extract_mention(state.task, store)
        if mention is None:
            raise NoTargetFound(f"no known disease mention in task {state.task!r}")
        trace.emit(BIOLOGIST, "tool_call", {"tool": "extract_mention", "mention": mention})

        link = entity_linking(mention, store, node_types=("Disease",))
        matches = link.exact_matches or link.contains_matches
        if not matches:
            raise NoTargetFound(f"entity linking found no disease node for {mention!r}")
        trace.emit(BIOLOGIST, "tool_call", {
            "tool": "entity_linking",
            "mention": mention,
            "exact": [n.name for n in link.exact_matches],
            "contains": [n.name for n in link.contains_matches],
            "expanded_terms": list(link.expanded_terms),
        })

        # Direct disease-protein links plus the one-deep disease-subtype
        # branch; both feed the same evidence pool.
        start_ids = [n.id for n in matches]
        patterns: list[tuple[list[str], list[str]]] = [
            (["DISEASE_PROTEIN"], ["Gene_protein"]),
            (["DISEASE_DISEASE", "DISEASE_PROTEIN"], ["Disease", "Gene_protein"]),
        ]
        all_paths: list[EvidencePath] = []
        genes: list[str] = []
        for pattern, types in patterns:
            search = find_related_paths(start_ids, pattern, store, node_types=types)
            hits = () if search.relaxed else search.paths
            for path in hits:
                all_paths.append(path)
                terminal = path.nodes[-1]
                if terminal not in genes:
                    genes.append(terminal)
            trace.emit(BIOLOGIST, "tool_call", {
                "tool": "find_related_paths",
                "pattern": pattern,
                "paths": len(hits),
                "genes": [store.nodes[g].name for g in genes],
            })
        if not genes:
            raise NoTargetFound("no disease-linked proteins in the graph")

        kept = filter_nodes_without_relation(genes, "DRUG_PROTEIN", "Drug", store)
        trace.emit(BIOLOGIST, "tool_call", {
            "tool": "filter_nodes_without_relation",
            "before": len(genes),
            "kept": [store.nodes[g].name for g in kept],
            "removed": [store.nodes[g].name for g in genes if g not in kept],
        })
        if not kept:
            raise NoTargetFound("every linked protein is already drugged")

        candidates = {
            gid: [p for p in all_paths if p.nodes[-1] == gid] for gid in kept
        }
        ranked = critic_rank(candidates, state.task, store,
                             pdb_map=load_pdb_map(fixtures.pdb_map))
        views = [_candidate_view(c, store) for c in ranked]
        trace.emit(BIOLOGIST, "tool_call", {
            "tool": "critic_rank",
            "ranked": [
                {"name": v["name"], "score": v["score"], "pdb_id": v["pdb_id"],
                 "paths": len(v["paths"])}
                for v in views
            ],
        })

        state.candidates = tuple(ranked)
        proposal = next((c for c in ranked if c.has_structure), None)
        if proposal is None:
            raise NoTargetFound("no ranked candidate has a structure")
        trace.emit(BIOLOGIST, "tool_call", {
            "tool": "select_target",
            "name": proposal.name,
            "pdb_id": proposal.pdb_id,
        })
        box.payload = {
            "candidates": len(ranked),
            "proposal": proposal.name,
            "pdb_id": proposal.pdb_id,
        }
    return proposal, views


def _extract_mention(task: str, store: GraphStore) -> str | None:
    """Longest known phrase (synonym alias, canonical name, or node name)
    present in the task text on word boundaries."""
    import re

    lowered = re.sub(r"\s+", " ", task.lower())
    phrases: set[str] = set(store.synonyms)
    for canonicals in store.synonyms.values():
        phrases.update(c.lower() for c in canonicals)
    phrases.update(node.name.lower() for node in store.nodes.values())
    for phrase in sorted(phrases, key=lambda p: (-len(p), p)):
        if re.search(rf"(?<![a-z0-9]){re.escape(phrase)}(?![a-z0-9])", lowered):
            return phrase
    return None


def _load_pocket(fixtures: FixtureSet, pdb_id: str) -> Pocket:
    rows = load_pockets(fixtures.pockets)
    index = fixtures.pocket_rows.get(pdb_id)
    if index is None or not 0 <= index < len(rows):
        raise MissingPocket(f"no pocket row for structure {pdb_id!r}")
    return rows[index]


def _run_chemist(state: AgentState, fixtures: FixtureSet, request: PipelineRequest) -> None:
    """Iteration 1 screens the seed library; later iterations mutate the
    current best under the accumulated penalties."""
    trace = state.trace
    with _stage(trace, CHEMIST, {"iteration": state.iteration}) as box:
        if state.iteration == 1:
            entries = load_library(fixtures.seeds)
            result = screen_library(entries, state.pocket)
            if not result.ranked:
                raise NoCandidate("no seed molecule parses")
            best = result.ranked[0]
            trace.emit(CHEMIST, "tool_call", {
                "tool": "screen_seed_library",
                "entries": len(entries),
                "skipped": len(result.skipped),
                "best": best.canonical,
                "score": best.score,
            })
            state.current_smiles = best.canonical
        else:
            config = OptimizerConfig(
                generations=request.generations,
                mutants_per_parent=request.mutants_per_parent,
                select_budget=request.select_budget,
                seed=hash64("optimize", state.seed, state.iteration),
            )
            result = optimize([state.current_smiles], state.pocket,
                              penalties=state.penalties, config=config)
            trace.emit(CHEMIST, "tool_call", {
                "tool": "optimize",
                "seed": config.seed,
                "parent": state.current_smiles,
                "best": result.best.canonical,
                "objective": result.best.objective,
                "history": list(result.history),
            })
            state.current_smiles = result.best.canonical
        box.payload = {"smiles": state.current_smiles}


def _run_guardrail(state: AgentState) -> bool:
    trace = state.trace
    with _stage(trace, GUARDRAIL, {"iteration": state.iteration}) as box:
        check = guardrail_validate(state)
        payload = {"tool": "validate_structure", "ok": check.ok}
        if not check.ok:
            payload["reason"] = check.reason
            payload["detail"] = check.detail
        trace.emit(GUARDRAIL, "tool_call", payload)
        box.payload = {"ok": check.ok}
    return check.ok


def _run_pharmacologist(
    state: AgentState,
    fixtures: FixtureSet,
    request: PipelineRequest,
    profiles: dict[str, ConcProfile],
) -> Verdict:
    trace = state.trace
    with _stage(trace, PHARMACOLOGIST,
                {"iteration": state.iteration, "smiles": state.current_smiles}) as box:
        admet = predict_admet(state.current_smiles, source=fixtures.admet_source)
        trace.emit(PHARMACOLOGIST, "tool_call", {
            "tool": "predict_admet",
            "source": "stub" if fixtures.admet_source == "stub" else "records",
            "profile": _admet_view(admet),
        })

        pk = None
        try:
            params = derive_params(admet, bw=request.body_weight)
            trace.emit(PHARMACOLOGIST, "tool_call", {
                "tool": "derive_params",
                "ok": True,
                "cl_h": params.cl_h,
                "cl_r": params.cl_r,
                "kp": params.kp,
            })
            regimen = DoseRegimen(route=request.route, dose=request.dose_mg)
            profile = simulate(params, regimen, request.horizon_h)
            pk = pk_metrics(profile)
            profiles[state.current_smiles] = profile
            trace.emit(PHARMACOLOGIST, "tool_call", {
                "tool": "simulate",
                "route": request.route,
                "dose_mg": request.dose_mg,
                "horizon_h": request.horizon_h,
                **pk,
            })
        except PbpkError as exc:
            # Nonphysical predictions are a domain outcome, not a crash:
            # the verdict still runs, with no kinetic metrics attached.
            trace.emit(PHARMACOLOGIST, "tool_call", {
                "tool": "derive_params",
                "ok": False,
                "reason": type(exc).__name__,
                "message": str(exc),
            })

        verdict = evaluate(admet, pk)
        state.verdicts.append(verdict)
        state.is_approved = verdict.approved
        trace.emit(PHARMACOLOGIST, "decision", {
            "decision": verdict.decision,
            "categories": list(verdict.categories),
            "feedback": verdict.feedback,
        })
        box.payload = {"decision": verdict.decision}
    return verdict


def run_pipeline(
    request: PipelineRequest,
    provider: DecisionProvider,
    trace_sink=None,
) -> RunResult:
    """Execute one full run. Request validation errors (unknown fixture,
    empty task) raise; anything that fails after the trace starts becomes a
    failure result whose final event references the causal error event."""
    fixtures = fixture_set(request.fixture)
    task = normalize_input(request.task)
    seed = fixtures.default_seed if request.seed is None else request.seed

    trace = TraceRecorder(sink=trace_sink)
    state = AgentState(
        raw_input=request.task,
        task=task,
        seed=seed,
        max_iterations=request.max_iterations,
        trace=trace,
    )
    trace.emit(ORCHESTRATOR, "enter", {
        "task": task,
        "fixture": fixtures.name,
        "seed": seed,
        "max_iterations": request.max_iterations,
    })
    trace.emit(ORCHESTRATOR, "tool_call", {
        "tool": "normalize_input",
        "raw": request.task,
        "task": task,
    })

    profiles: dict[str, ConcProfile] = {}
    steering_map = default_steering_map()

    def finish(success: bool, failure_reason: str | None) -> RunResult:
        payload: dict = {"outcome": "success" if success else "failure"}
        if success:
            payload["smiles"] = state.current_smiles
        else:
            payload["reason"] = failure_reason
            if trace.last_error_seq is not None:
                payload["causal_seq"] = trace.last_error_seq
        payload["iterations"] = state.iteration
        trace.emit(ORCHESTRATOR, "exit", payload)
        return RunResult(
            success=success,
            smiles=state.current_smiles if success else None,
            target=state.target.name if state.target else None,
            iterations=state.iteration,
            failure_reason=failure_reason,
            verdicts=tuple(state.verdicts),
            trace=trace.events,
            profiles=profiles,
        )

    try:
        proposal, views = _run_biologist(state, fixtures)

        context = {
            "gate": "target_approval",
            "proposal": {
                "name": proposal.name,
                "node_id": proposal.node_id,
                "pdb_id": proposal.pdb_id,
                "score": proposal.score,
            },
            "candidates": views,
        }
        decision = validate_decision("target_approval", provider.decide("target_approval", context))
        if not decision["approve"]:
            trace.emit(ORCHESTRATOR, "decision", {
                "gate": "target_approval",
                "approve": False,
                "event": "TargetRejected",
                "target": proposal.name,
            })
            return finish(False, "TargetRejected")
        trace.emit(ORCHESTRATOR, "decision", {
            "gate": "target_approval",
            "approve": True,
            "target": proposal.name,
        })
        state.target = proposal
        state.pocket = _load_pocket(fixtures, proposal.pdb_id)

        while True:
            state.iteration += 1
            _run_chemist(state, fixtures, request)
            if not _run_guardrail(state):
                return finish(False, "GenerationFailed")
            verdict = _run_pharmacologist(state, fixtures, request, profiles)

            route = should_continue(state)
            trace.emit(ORCHESTRATOR, "decision", {
                "tool": "should_continue",
                "iteration": state.iteration,
                "next": route.value,
            })
            if route is Next.END_SUCCESS:
                return finish(True, None)
            if route is Next.END_FAILURE:
                return finish(False, "IterationLimitReached")

            for category in verdict.categories:
                if category not in state.categories:
                    state.categories.append(category)
            steering_context = {
                "gate": "steering",
                "iteration": state.iteration,
                "smiles": state.current_smiles,
                "decision": verdict.decision,
                "categories": list(verdict.categories),
                "feedback": verdict.feedback,
                "pk": dict(verdict.pk) if verdict.pk is not None else None,
            }
            steer = validate_decision("steering", provider.decide("steering", steering_context))
            steered = steering_to_categories(steer["text"], steering_map)
            trace.emit(ORCHESTRATOR, "decision", {
                "gate": "steering",
                "text": steer["text"],
                "categories": list(steered),
            })
            for category in steered:
                if category not in state.categories:
                    state.categories.append(category)
            state.penalties = categories_to_penalties(state.categories)
            trace.emit(ORCHESTRATOR, "tool_call", {
                "tool": "update_penalties",
                "categories": list(state.categories),
                "terms": len(state.penalties.terms),
            })
    except Exception as exc:
        return finish(False, f"{type(exc).__name__}: {exc}")
