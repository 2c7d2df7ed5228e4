"""Translation of rejection categories into objective-function penalties."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from drugdesk.molgraph import DescriptorSet
from drugdesk.pharmacologist.verdict import Verdict

DESCRIPTOR_NAMES = ("logp", "qed_like", "hbd", "hba", "mw")
DIRECTIONS = ("above", "below")


class EmptyVerdict(ValueError):
    """Approved verdicts carry no feedback to translate."""


@dataclass(frozen=True)
class PenaltyTerm:
    """One hinge: weight * max(0, value - threshold) for direction "above",
    mirrored for "below"."""

    descriptor: str
    threshold: float
    direction: str
    weight: float

    def __post_init__(self):
        if self.descriptor not in DESCRIPTOR_NAMES:
            raise ValueError(f"unknown descriptor {self.descriptor!r}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be above or below, got {self.direction!r}")
        if self.weight < 0:
            raise ValueError(f"weight must be nonnegative, got {self.weight}")

    def penalty(self, desc: DescriptorSet) -> float:
        value = float(getattr(desc, self.descriptor))
        excess = value - self.threshold if self.direction == "above" else self.threshold - value
        return self.weight * max(0.0, excess)


@dataclass(frozen=True)
class PenaltySpec:
    terms: tuple[PenaltyTerm, ...]

    def penalty(self, desc: DescriptorSet) -> float:
        return sum(term.penalty(desc) for term in self.terms)


# Expressing the drug-likeness penalty 2*(1 - qed_like) as a hinge below 1.0
# keeps every row in the same shape; qed_like never exceeds 1.
_CATEGORY_TERMS: dict[str, tuple[PenaltyTerm, ...]] = {
    "clearance": (
        PenaltyTerm("logp", 3.0, "above", 1.0),
        PenaltyTerm("mw", 450.0, "above", 0.01),
    ),
    "permeability": (
        PenaltyTerm("hbd", 3.0, "above", 0.5),
        PenaltyTerm("hba", 8.0, "above", 0.5),
    ),
    "toxicity": (PenaltyTerm("qed_like", 1.0, "below", 2.0),),
    "solubility": (PenaltyTerm("qed_like", 1.0, "below", 2.0),),
}


def categories_to_penalties(categories: Sequence[str]) -> PenaltySpec:
    """Union of the per-category penalty rows, in first-seen category order."""
    terms: list[PenaltyTerm] = []
    for category in categories:
        for term in _CATEGORY_TERMS.get(category, ()):
            if term not in terms:
                terms.append(term)
    return PenaltySpec(tuple(terms))


def feedback_to_penalties(verdict: Verdict) -> PenaltySpec:
    """Penalty rows for one rejection, in verdict category order."""
    if verdict.approved:
        raise EmptyVerdict("approved verdicts produce no penalties")
    return categories_to_penalties(verdict.categories)
