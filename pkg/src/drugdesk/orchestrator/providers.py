"""Decision providers: where human choices enter the otherwise fixed flow.

A provider answers exactly two gates. ``target_approval`` expects
{"approve": bool}; ``steering`` expects {"text": str}, free text that a
keyword table maps onto verdict categories. Implementations: auto-approve
(property tests), scripted (replays), terminal-interactive (CLI), and the
HTTP service's parked provider.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Protocol

from drugdesk.fixtures import fixture_path
from drugdesk.pharmacologist import CATEGORIES

GATES = ("target_approval", "steering")
DEFAULT_STEERING_FILE = "steering_keywords.json"


class UnknownGate(ValueError):
    pass


class BadDecision(ValueError):
    """Decision payload does not match the gate's expected shape."""


class BadScript(ValueError):
    pass


class BadSteeringMap(ValueError):
    pass


def validate_decision(gate: str, payload: dict) -> dict:
    """Check a raw decision payload against its gate; returns the payload
    reduced to the gate's expected keys."""
    if gate not in GATES:
        raise UnknownGate(f"gate must be one of {GATES}, got {gate!r}")
    if not isinstance(payload, dict):
        raise BadDecision(f"decision payload must be an object, got {type(payload).__name__}")
    if gate == "target_approval":
        approve = payload.get("approve")
        if not isinstance(approve, bool):
            raise BadDecision("target_approval payload needs a boolean 'approve' field")
        return {"approve": approve}
    text = payload.get("text")
    if not isinstance(text, str):
        raise BadDecision("steering payload needs a string 'text' field")
    return {"text": text}


class DecisionProvider(Protocol):
    def decide(self, gate: str, context: dict) -> dict: ...


class AutoApproveProvider:
    """Approves the target and never steers; runs end on verdicts alone."""

    def decide(self, gate: str, context: dict) -> dict:
        if gate == "target_approval":
            return {"approve": True}
        if gate == "steering":
            return {"text": ""}
        raise UnknownGate(f"gate must be one of {GATES}, got {gate!r}")


@dataclass
class ScriptedProvider:
    """Replays pre-recorded decisions: one target choice, then steering
    texts consumed in order (missing entries fall back to empty text)."""

    target: str
    steering: tuple[str, ...] = ()
    _cursor: int = field(default=0, init=False, repr=False)

    def __post_init__(self):
        if self.target not in ("approve", "reject"):
            raise BadScript(f"target must be 'approve' or 'reject', got {self.target!r}")
        if not all(isinstance(t, str) for t in self.steering):
            raise BadScript("steering entries must be strings")
        self.steering = tuple(self.steering)

    def decide(self, gate: str, context: dict) -> dict:
        if gate == "target_approval":
            return {"approve": self.target == "approve"}
        if gate == "steering":
            text = self.steering[self._cursor] if self._cursor < len(self.steering) else ""
            self._cursor += 1
            return {"text": text}
        raise UnknownGate(f"gate must be one of {GATES}, got {gate!r}")


def load_script(path: str | Path) -> ScriptedProvider:
    """Read a decision script: {"target": "approve"|"reject", "steering": [...]}."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadScript(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or "target" not in doc:
        raise BadScript(f"{path}: expected an object with a 'target' field")
    steering = doc.get("steering", [])
    if not isinstance(steering, list):
        raise BadScript(f"{path}: 'steering' must be a list of strings")
    return ScriptedProvider(target=doc["target"], steering=tuple(steering))


class InteractiveProvider:
    """Terminal prompts; input/output injectable for tests."""

    def __init__(
        self,
        input_fn: Callable[[str], str] = input,
        print_fn: Callable[[str], None] = print,
    ):
        self._input = input_fn
        self._print = print_fn

    def decide(self, gate: str, context: dict) -> dict:
        if gate == "target_approval":
            proposal = context.get("proposal", {})
            self._print(f"Proposed target: {proposal.get('name')} "
                        f"(structure {proposal.get('pdb_id')}, score {proposal.get('score')})")
            for cand in context.get("candidates", []):
                self._print(f"  {cand['name']:10s} score={cand['score']:.2f} "
                            f"structure={cand['pdb_id'] or '-'} paths={len(cand['paths'])}")
            while True:
                answer = self._input("Approve this target? [y/n] ").strip().lower()
                if answer in ("y", "yes"):
                    return {"approve": True}
                if answer in ("n", "no"):
                    return {"approve": False}
        if gate == "steering":
            self._print(f"Iteration {context.get('iteration')}: {context.get('decision')}")
            self._print(f"  {context.get('feedback')}")
            text = self._input("Steering feedback (empty to continue): ")
            return {"text": text}
        raise UnknownGate(f"gate must be one of {GATES}, got {gate!r}")


def load_steering_map(path: str | Path) -> dict[str, str]:
    """Read a {phrase: category} table; phrases are matched case-insensitively."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadSteeringMap(f"{path}: {exc}") from None
    if not isinstance(doc, dict):
        raise BadSteeringMap(f"{path}: expected an object of phrase -> category")
    table: dict[str, str] = {}
    for phrase, category in doc.items():
        if not phrase.strip():
            raise BadSteeringMap(f"{path}: empty phrase")
        if category not in CATEGORIES:
            raise BadSteeringMap(
                f"{path}: phrase {phrase!r} maps to unknown category {category!r}"
            )
        table[phrase.strip().lower()] = category
    return table


@lru_cache(maxsize=1)
def default_steering_map() -> dict[str, str]:
    return load_steering_map(fixture_path(DEFAULT_STEERING_FILE))


def steering_to_categories(text: str, keyword_map: dict[str, str] | None = None) -> tuple[str, ...]:
    """Map free text onto verdict categories via phrase matching.

    Longer phrases match first and consume their span, so "metabolic
    stability" hits clearance without also firing the bare "stability"
    phrase. Categories come back in order of first match position.
    """
    if keyword_map is None:
        keyword_map = default_steering_map()
    lowered = text.lower()
    consumed = [False] * len(lowered)
    hits: list[tuple[int, str]] = []
    for phrase in sorted(keyword_map, key=lambda p: (-len(p), p)):
        start = 0
        while True:
            pos = lowered.find(phrase, start)
            if pos < 0:
                break
            end = pos + len(phrase)
            if not any(consumed[pos:end]):
                for i in range(pos, end):
                    consumed[i] = True
                hits.append((pos, keyword_map[phrase]))
            start = pos + 1
    categories: list[str] = []
    for _, category in sorted(hits):
        if category not in categories:
            categories.append(category)
    return tuple(categories)
