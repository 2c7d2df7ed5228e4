"""ADMET acquisition, rule-based verdicts, and feedback-to-penalty translation."""

from drugdesk.pharmacologist.admet import (
    FIELD_MAP,
    BadRecord,
    FixtureMiss,
    load_admet_records,
    predict_admet,
    stub_admet,
)
from drugdesk.pharmacologist.penalties import (
    DESCRIPTOR_NAMES,
    EmptyVerdict,
    PenaltySpec,
    PenaltyTerm,
    categories_to_penalties,
    feedback_to_penalties,
)
from drugdesk.pharmacologist.verdict import (
    CATEGORIES,
    DEFAULT_RULES_FILE,
    BadRuleConfig,
    Rule,
    Verdict,
    default_rules,
    evaluate,
    load_rules,
)

__all__ = [
    "FIELD_MAP",
    "BadRecord",
    "FixtureMiss",
    "load_admet_records",
    "predict_admet",
    "stub_admet",
    "DESCRIPTOR_NAMES",
    "EmptyVerdict",
    "PenaltySpec",
    "PenaltyTerm",
    "categories_to_penalties",
    "feedback_to_penalties",
    "CATEGORIES",
    "DEFAULT_RULES_FILE",
    "BadRuleConfig",
    "Rule",
    "Verdict",
    "default_rules",
    "evaluate",
    "load_rules",
]
