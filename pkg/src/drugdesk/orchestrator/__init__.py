"""Workflow coordination: state machine, decision gates, trace, fixtures."""

from drugdesk.orchestrator.pipeline import (
    FIXTURE_SETS,
    BadRequestConfig,
    FixtureSet,
    MissingPocket,
    NoCandidate,
    NoTargetFound,
    PipelineRequest,
    RunResult,
    fixture_set,
    load_request,
    request_from_dict,
    run_pipeline,
    write_result_json,
)
from drugdesk.orchestrator.providers import (
    DEFAULT_STEERING_FILE,
    GATES,
    AutoApproveProvider,
    BadDecision,
    BadScript,
    BadSteeringMap,
    DecisionProvider,
    InteractiveProvider,
    ScriptedProvider,
    UnknownGate,
    default_steering_map,
    load_script,
    load_steering_map,
    steering_to_categories,
    validate_decision,
)
from drugdesk.orchestrator.state import (
    BIOLOGIST,
    CHEMIST,
    EVENT_KINDS,
    GUARDRAIL,
    ORCHESTRATOR,
    PHARMACOLOGIST,
    STOP_VERBS,
    AgentState,
    EmptyInput,
    GuardrailResult,
    MissingVerdict,
    Next,
    TraceEvent,
    TraceRecorder,
    guardrail_validate,
    normalize_input,
    read_trace_jsonl,
    should_continue,
    stable_trace_lines,
    write_trace_jsonl,
)

__all__ = [
    "FIXTURE_SETS",
    "BadRequestConfig",
    "FixtureSet",
    "MissingPocket",
    "NoCandidate",
    "NoTargetFound",
    "PipelineRequest",
    "RunResult",
    "fixture_set",
    "load_request",
    "request_from_dict",
    "run_pipeline",
    "write_result_json",
    "DEFAULT_STEERING_FILE",
    "GATES",
    "AutoApproveProvider",
    "BadDecision",
    "BadScript",
    "BadSteeringMap",
    "DecisionProvider",
    "InteractiveProvider",
    "ScriptedProvider",
    "UnknownGate",
    "default_steering_map",
    "load_script",
    "load_steering_map",
    "steering_to_categories",
    "validate_decision",
    "BIOLOGIST",
    "CHEMIST",
    "EVENT_KINDS",
    "GUARDRAIL",
    "ORCHESTRATOR",
    "PHARMACOLOGIST",
    "STOP_VERBS",
    "AgentState",
    "EmptyInput",
    "GuardrailResult",
    "MissingVerdict",
    "Next",
    "TraceEvent",
    "TraceRecorder",
    "guardrail_validate",
    "normalize_input",
    "read_trace_jsonl",
    "should_continue",
    "stable_trace_lines",
    "write_trace_jsonl",
]
