"""Rule-table verdicts over an ADMET profile.

The table is ordered and lives in a JSON config; every rule that fires
contributes its category and one templated feedback sentence. A rule whose
field is absent from the profile is skipped, never fired.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields as dataclass_fields
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from drugdesk.fixtures import fixture_path
from drugdesk.pbpk import AdmetProfile

CATEGORIES = ("clearance", "permeability", "toxicity", "solubility", "stability")
_OPS = {
    "lt": lambda v, t: v < t,
    "le": lambda v, t: v <= t,
    "gt": lambda v, t: v > t,
    "ge": lambda v, t: v >= t,
}
_PROFILE_FIELDS = frozenset(f.name for f in dataclass_fields(AdmetProfile))

DEFAULT_RULES_FILE = "verdict_rules.json"


class BadRuleConfig(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    name: str
    category: str
    field: str
    op: str
    threshold: float
    text: str

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise BadRuleConfig(f"rule {self.name}: unknown category {self.category!r}")
        if self.field not in _PROFILE_FIELDS:
            raise BadRuleConfig(f"rule {self.name}: unknown profile field {self.field!r}")
        if self.op not in _OPS:
            raise BadRuleConfig(f"rule {self.name}: unknown op {self.op!r}")

    def fires(self, admet: AdmetProfile) -> bool:
        value = getattr(admet, self.field)
        return value is not None and _OPS[self.op](value, self.threshold)

    def sentence(self, admet: AdmetProfile) -> str:
        return self.text.format(value=getattr(admet, self.field), threshold=self.threshold)


def load_rules(path: str | Path) -> tuple[Rule, ...]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise BadRuleConfig(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("rules"), list):
        raise BadRuleConfig(f"{path}: expected an object with a 'rules' list")
    rules = []
    for i, row in enumerate(doc["rules"]):
        extra = set(row) - {"name", "category", "field", "op", "threshold", "text"}
        if extra:
            raise BadRuleConfig(f"{path}: rule {i}: unknown keys {sorted(extra)}")
        try:
            rules.append(
                Rule(
                    name=row["name"],
                    category=row["category"],
                    field=row["field"],
                    op=row["op"],
                    threshold=float(row["threshold"]),
                    text=row["text"],
                )
            )
        except KeyError as exc:
            raise BadRuleConfig(f"{path}: rule {i}: missing key {exc}") from None
    return tuple(rules)


@lru_cache(maxsize=1)
def default_rules() -> tuple[Rule, ...]:
    return load_rules(fixture_path(DEFAULT_RULES_FILE))


@dataclass(frozen=True)
class Verdict:
    decision: str
    categories: tuple[str, ...]
    feedback: str
    admet: AdmetProfile
    pk: Mapping[str, float] | None = None

    def __post_init__(self):
        if self.decision not in ("APPROVED", "REJECTED"):
            raise ValueError(f"decision must be APPROVED or REJECTED, got {self.decision!r}")
        if self.decision == "REJECTED" and not self.categories:
            raise ValueError("a rejection must name at least one category")
        if self.decision == "APPROVED" and self.categories:
            raise ValueError("an approval must not carry categories")
        unknown = set(self.categories) - set(CATEGORIES)
        if unknown:
            raise ValueError(f"unknown categories {sorted(unknown)}")

    @property
    def approved(self) -> bool:
        return self.decision == "APPROVED"


def evaluate(
    admet: AdmetProfile,
    pk: Mapping[str, float] | None = None,
    rules: tuple[Rule, ...] | None = None,
) -> Verdict:
    """Run the ordered rule table; any firing rule rejects the molecule."""
    if rules is None:
        rules = default_rules()
    categories: list[str] = []
    sentences: list[str] = []
    for rule in rules:
        if rule.fires(admet):
            if rule.category not in categories:
                categories.append(rule.category)
            sentences.append(rule.sentence(admet))
    if categories:
        return Verdict("REJECTED", tuple(categories), " ".join(sentences), admet, pk)
    return Verdict("APPROVED", (), "All checks passed.", admet, pk)
