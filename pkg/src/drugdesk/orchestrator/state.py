"""Shared run state, trace recording, and the three routing primitives.

The trace is the authoritative record of a run: every stage entry, tool
call, and decision lands in it with a dense sequence number. Wall-clock
time lives in exactly one field (``ts``) so that replay comparisons can
strip it and demand byte identity on everything else.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable

from drugdesk.kgraph import TargetCandidate
from drugdesk.molgraph import SmilesError, parse_smiles
from drugdesk.pharmacologist import PenaltySpec, Verdict
from drugdesk.screening import Pocket

EVENT_KINDS = ("enter", "tool_call", "decision", "exit")

# Node names as they appear in trace events.
ORCHESTRATOR = "orchestrator"
BIOLOGIST = "biologist"
CHEMIST = "chemist"
GUARDRAIL = "guardrail"
PHARMACOLOGIST = "pharmacologist"


class EmptyInput(ValueError):
    pass


class MissingVerdict(RuntimeError):
    """should_continue asked to route before the iteration's verdict exists."""


@dataclass(frozen=True)
class TraceEvent:
    seq: int
    node: str
    kind: str
    payload: dict
    ts: float

    def __post_init__(self):
        if self.seq < 0:
            raise ValueError(f"seq must be >= 0, got {self.seq}")
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"kind must be one of {EVENT_KINDS}, got {self.kind!r}")

    def to_json(self) -> dict:
        return {
            "seq": self.seq,
            "node": self.node,
            "kind": self.kind,
            "payload": self.payload,
            "ts": self.ts,
        }

    def stable_view(self) -> dict:
        """The event without its wall-clock field, for replay comparison."""
        return {"seq": self.seq, "node": self.node, "kind": self.kind, "payload": self.payload}


class TraceRecorder:
    """Append-only event log with dense sequence numbers.

    An optional sink receives each event as it is emitted (the HTTP service
    uses this to stream events to pollers while the run is still going).
    """

    def __init__(self, sink: Callable[[TraceEvent], None] | None = None):
        self._events: list[TraceEvent] = []
        self._sink = sink
        self.last_error_seq: int | None = None

    def emit(self, node: str, kind: str, payload: dict) -> TraceEvent:
        json.dumps(payload)  # payloads must be JSON-safe at emit time, not at dump time
        event = TraceEvent(len(self._events), node, kind, dict(payload), time.time())
        self._events.append(event)
        if "error" in payload:
            self.last_error_seq = event.seq
        if self._sink is not None:
            self._sink(event)
        return event

    @property
    def events(self) -> tuple[TraceEvent, ...]:
        return tuple(self._events)

    def __len__(self) -> int:
        return len(self._events)


def write_trace_jsonl(events: Iterable[TraceEvent], path: str | Path) -> None:
    with open(path, "w") as fh:
        for event in events:
            fh.write(json.dumps(event.to_json(), sort_keys=True) + "\n")


def read_trace_jsonl(path: str | Path) -> tuple[TraceEvent, ...]:
    events = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        doc = json.loads(line)
        events.append(TraceEvent(doc["seq"], doc["node"], doc["kind"], doc["payload"], doc["ts"]))
    return tuple(events)


def stable_trace_lines(events: Iterable[TraceEvent]) -> list[str]:
    """Serialized events minus timestamps; equal lists mean identical replays."""
    return [json.dumps(event.stable_view(), sort_keys=True) for event in events]


@dataclass
class AgentState:
    """The one mutable record a run threads through its stages."""

    raw_input: str
    task: str
    candidates: tuple[TargetCandidate, ...] = ()
    target: TargetCandidate | None = None
    pocket: Pocket | None = None
    current_smiles: str | None = None
    verdicts: list[Verdict] = field(default_factory=list)
    categories: list[str] = field(default_factory=list)
    penalties: PenaltySpec = field(default_factory=lambda: PenaltySpec(()))
    is_approved: bool = False
    iteration: int = 0
    max_iterations: int = 3
    seed: int = 0
    trace: TraceRecorder = field(default_factory=TraceRecorder)


STOP_VERBS = frozenset({
    "find", "discover", "design", "develop", "make", "identify", "search",
    "want", "need", "give", "create", "propose", "suggest", "screen", "optimize",
})


def normalize_input(raw: str) -> str:
    """Wrap a bare disease name in the standard task template.

    A bare name is at most four whitespace tokens containing no verb from
    STOP_VERBS; anything longer or already phrased as a request passes
    through unchanged.
    """
    if raw is None or not raw.strip():
        raise EmptyInput("task text must be non-empty")
    text = raw.strip()
    tokens = [t.strip(".,;:!?\"'").lower() for t in text.split()]
    if len(tokens) <= 4 and not (set(tokens) & STOP_VERBS):
        return f"Find a novel drug candidate for {text}."
    return text


@dataclass(frozen=True)
class GuardrailResult:
    ok: bool
    reason: str | None = None
    detail: str | None = None


def guardrail_validate(state: AgentState) -> GuardrailResult:
    """Syntax gate at the structure-generation -> evaluation edge.

    Failure is a result, not an exception: the caller ends the run with
    reason GenerationFailed instead of propagating an error.
    """
    smiles = state.current_smiles
    if not smiles:
        return GuardrailResult(False, "GenerationFailed", "no structure was produced")
    try:
        parse_smiles(smiles)
    except SmilesError as exc:
        return GuardrailResult(False, "GenerationFailed", str(exc))
    return GuardrailResult(True)


class Next(Enum):
    CHEMIST = "chemist"
    END_SUCCESS = "end_success"
    END_FAILURE = "end_failure"


def should_continue(state: AgentState) -> Next:
    """Routing after a verdict: approval ends the run, rejection loops back
    to structure generation until the iteration cap is reached."""
    if state.iteration == 0 or len(state.verdicts) != state.iteration:
        raise MissingVerdict(
            f"iteration {state.iteration} has {len(state.verdicts)} verdicts on record"
        )
    if state.is_approved:
        return Next.END_SUCCESS
    if state.iteration < state.max_iterations:
        return Next.CHEMIST
    return Next.END_FAILURE
