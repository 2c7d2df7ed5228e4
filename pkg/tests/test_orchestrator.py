"""Workflow coordination: routing primitives, gates, traces, full runs."""

import json

import pytest

from drugdesk.fixtures import UnknownFixture
from drugdesk.hashing import hash64
from drugdesk.orchestrator import (
    AgentState,
    AutoApproveProvider,
    BadDecision,
    BadScript,
    EmptyInput,
    GuardrailResult,
    MissingVerdict,
    Next,
    PipelineRequest,
    RunResult,
    ScriptedProvider,
    TraceEvent,
    TraceRecorder,
    guardrail_validate,
    load_request,
    load_script,
    normalize_input,
    read_trace_jsonl,
    run_pipeline,
    should_continue,
    stable_trace_lines,
    steering_to_categories,
    validate_decision,
    write_trace_jsonl,
)
from drugdesk.orchestrator.pipeline import BadRequestConfig
from drugdesk.pbpk import AdmetProfile
from drugdesk.pharmacologist import Verdict, categories_to_penalties, feedback_to_penalties


def scripted(steering=("", "")):
    return ScriptedProvider(target="approve", steering=steering)


DIABETES_REQUEST = PipelineRequest(task="I want to discover drugs for Diabetes.")


@pytest.fixture(scope="module")
def diabetes_run():
    return run_pipeline(DIABETES_REQUEST, scripted())


class TestNormalizeInput:
    def test_bare_disease_name_is_templated(self):
        assert normalize_input("lung cancer") == "Find a novel drug candidate for lung cancer."

    def test_full_sentence_passes_through(self):
        text = "I want to discover drugs for Diabetes."
        assert normalize_input(text) == text

    def test_empty_raises(self):
        with pytest.raises(EmptyInput):
            normalize_input("")
        with pytest.raises(EmptyInput):
            normalize_input("   ")

    def test_single_token(self):
        assert normalize_input("diabetes") == "Find a novel drug candidate for diabetes."

    def test_short_phrase_with_verb_passes_through(self):
        assert normalize_input("find diabetes drugs") == "find diabetes drugs"

    def test_five_tokens_pass_through(self):
        text = "a very long disease name here"
        assert normalize_input(text) == text

    def test_surrounding_whitespace_stripped(self):
        assert normalize_input("  gout ") == "Find a novel drug candidate for gout."


class TestGuardrail:
    def test_valid_smiles_ok(self):
        state = AgentState(raw_input="x", task="x",
                           current_smiles="COC1CC(O)(c2ccncc2)CON1CC(=O)O")
        assert guardrail_validate(state) == GuardrailResult(True)

    def test_mangled_smiles_terminates(self):
        # stereo markers stripped of their brackets, as an upstream tool
        # echo might corrupt them
        state = AgentState(raw_input="x", task="x",
                           current_smiles="CCNCc1c(C)c(N)cc2c1C@H(C)C@@H1CC@H2N(O)C1")
        result = guardrail_validate(state)
        assert not result.ok
        assert result.reason == "GenerationFailed"
        assert result.detail

    def test_missing_smiles_terminates(self):
        state = AgentState(raw_input="x", task="x", current_smiles=None)
        result = guardrail_validate(state)
        assert not result.ok
        assert result.reason == "GenerationFailed"


def _verdict(decision, categories=()):
    admet = AdmetProfile(ppb=0.5, vss=30.0, t_half=6.0)
    return Verdict(decision, tuple(categories), "x", admet)


class TestShouldContinue:
    def test_approved_ends_success(self):
        state = AgentState(raw_input="x", task="x", iteration=3, max_iterations=3,
                           is_approved=True)
        state.verdicts = [_verdict("REJECTED", ("clearance",))] * 2 + [_verdict("APPROVED")]
        assert should_continue(state) is Next.END_SUCCESS

    def test_rejected_below_cap_continues(self):
        state = AgentState(raw_input="x", task="x", iteration=1, max_iterations=3)
        state.verdicts = [_verdict("REJECTED", ("clearance",))]
        assert should_continue(state) is Next.CHEMIST

    def test_rejected_at_cap_ends_failure(self):
        state = AgentState(raw_input="x", task="x", iteration=3, max_iterations=3)
        state.verdicts = [_verdict("REJECTED", ("clearance",))] * 3
        assert should_continue(state) is Next.END_FAILURE

    def test_missing_verdict_raises(self):
        state = AgentState(raw_input="x", task="x", iteration=1)
        with pytest.raises(MissingVerdict):
            should_continue(state)

    def test_before_first_iteration_raises(self):
        state = AgentState(raw_input="x", task="x")
        with pytest.raises(MissingVerdict):
            should_continue(state)


class TestTrace:
    def test_sequence_dense_from_zero(self):
        trace = TraceRecorder()
        trace.emit("a", "enter", {})
        trace.emit("a", "tool_call", {"tool": "t"})
        trace.emit("a", "exit", {})
        assert [ev.seq for ev in trace.events] == [0, 1, 2]

    def test_bad_kind_rejected(self):
        with pytest.raises(ValueError):
            TraceEvent(0, "a", "started", {}, 0.0)

    def test_payload_must_be_json_safe(self):
        trace = TraceRecorder()
        with pytest.raises(TypeError):
            trace.emit("a", "enter", {"bad": object()})

    def test_sink_sees_every_event(self):
        seen = []
        trace = TraceRecorder(sink=seen.append)
        trace.emit("a", "enter", {})
        trace.emit("a", "exit", {})
        assert [ev.seq for ev in seen] == [0, 1]

    def test_jsonl_round_trip(self, tmp_path):
        trace = TraceRecorder()
        trace.emit("a", "enter", {"k": 1})
        trace.emit("a", "exit", {})
        path = tmp_path / "trace.jsonl"
        write_trace_jsonl(trace.events, path)
        assert read_trace_jsonl(path) == trace.events
        lines = path.read_text().splitlines()
        assert len(lines) == 2
        assert all("ts" in json.loads(line) for line in lines)

    def test_stable_lines_exclude_wall_clock_only(self):
        trace = TraceRecorder()
        trace.emit("a", "enter", {"k": 1})
        doc = json.loads(stable_trace_lines(trace.events)[0])
        assert doc == {"seq": 0, "node": "a", "kind": "enter", "payload": {"k": 1}}


class TestDecisions:
    def test_target_payload_shape(self):
        assert validate_decision("target_approval", {"approve": True}) == {"approve": True}
        with pytest.raises(BadDecision):
            validate_decision("target_approval", {"approve": "yes"})
        with pytest.raises(BadDecision):
            validate_decision("target_approval", {})

    def test_steering_payload_shape(self):
        assert validate_decision("steering", {"text": "hi"}) == {"text": "hi"}
        with pytest.raises(BadDecision):
            validate_decision("steering", {"text": 3})

    def test_scripted_consumes_steering_in_order(self):
        provider = ScriptedProvider(target="approve", steering=("a", "b"))
        assert provider.decide("steering", {}) == {"text": "a"}
        assert provider.decide("steering", {}) == {"text": "b"}
        assert provider.decide("steering", {}) == {"text": ""}

    def test_script_file_round_trip(self, tmp_path):
        path = tmp_path / "script.json"
        path.write_text('{"target": "reject", "steering": ["x"]}')
        provider = load_script(path)
        assert provider.decide("target_approval", {}) == {"approve": False}
        assert provider.decide("steering", {}) == {"text": "x"}

    def test_bad_script_rejected(self, tmp_path):
        path = tmp_path / "script.json"
        path.write_text('{"steering": []}')
        with pytest.raises(BadScript):
            load_script(path)
        with pytest.raises(BadScript):
            ScriptedProvider(target="maybe")


class TestSteeringKeywords:
    def test_documented_example(self):
        assert steering_to_categories("please improve metabolic stability") == ("clearance",)

    def test_longest_phrase_wins_over_substring(self):
        # "metabolic stability" must not also fire a bare stability phrase
        cats = steering_to_categories("metabolic stability matters")
        assert cats == ("clearance",)

    def test_multiple_categories_in_match_order(self):
        cats = steering_to_categories("fix the toxicity and then absorption")
        assert cats == ("toxicity", "permeability")

    def test_case_insensitive(self):
        assert steering_to_categories("Improve SOLUBILITY") == ("solubility",)

    def test_no_match_is_empty(self):
        assert steering_to_categories("make it prettier") == ()
        assert steering_to_categories("") == ()

    def test_duplicate_category_reported_once(self):
        assert steering_to_categories("toxic and toxicity") == ("toxicity",)


class TestRequest:
    def test_unknown_fixture_raises(self):
        with pytest.raises(UnknownFixture):
            run_pipeline(PipelineRequest(task="diabetes", fixture="zebra"),
                         AutoApproveProvider())

    def test_empty_task_raises(self):
        with pytest.raises(EmptyInput):
            run_pipeline(PipelineRequest(task="  "), AutoApproveProvider())

    def test_bad_route_rejected(self):
        with pytest.raises(BadRequestConfig):
            PipelineRequest(task="x", route="topical")

    def test_config_file_round_trip(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"task": "diabetes", "seed": 14, "max_iterations": 2}')
        request = load_request(path)
        assert request.task == "diabetes"
        assert request.seed == 14
        assert request.max_iterations == 2
        assert request.fixture == "diabetes"

    def test_config_file_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text('{"task": "x", "budget": 3}')
        with pytest.raises(BadRequestConfig):
            load_request(path)


class TestDiabetesReplay:
    def test_succeeds_within_three_iterations(self, diabetes_run):
        assert diabetes_run.success
        assert diabetes_run.iterations == 3
        assert diabetes_run.failure_reason is None

    def test_chooses_the_structured_target(self, diabetes_run):
        assert diabetes_run.target == "HNF1B"

    def test_verdict_arc_rejected_rejected_approved(self, diabetes_run):
        assert [v.decision for v in diabetes_run.verdicts] == [
            "REJECTED", "REJECTED", "APPROVED",
        ]
        assert diabetes_run.verdicts[0].categories == ("clearance", "permeability")
        assert diabetes_run.verdicts[1].categories == ("clearance",)

    def test_final_candidate_has_a_kinetic_profile(self, diabetes_run):
        assert diabetes_run.smiles in diabetes_run.profiles
        profile = diabetes_run.profiles[diabetes_run.smiles]
        assert len(profile) > 1
        assert diabetes_run.verdicts[-1].pk is not None
        assert diabetes_run.verdicts[-1].pk["cmax"] > 0

    def test_rejected_candidates_have_no_profile(self, diabetes_run):
        # both rejections carried nonphysical clearance, so nothing simulated
        assert len(diabetes_run.profiles) == 1

    def test_replay_is_deterministic(self, diabetes_run):
        again = run_pipeline(DIABETES_REQUEST, scripted())
        assert stable_trace_lines(again.trace) == stable_trace_lines(diabetes_run.trace)
        assert again.to_json() == diabetes_run.to_json()

    def test_every_enter_has_a_matching_exit(self, diabetes_run):
        stack = []
        for event in diabetes_run.trace:
            if event.kind == "enter":
                stack.append(event.node)
            elif event.kind == "exit":
                assert stack and stack[-1] == event.node
                stack.pop()
        assert stack == []

    def test_sequence_numbers_dense(self, diabetes_run):
        assert [ev.seq for ev in diabetes_run.trace] == list(range(len(diabetes_run.trace)))

    def test_optimizer_seeds_derive_from_run_seed(self, diabetes_run):
        seeds = [ev.payload["seed"] for ev in diabetes_run.trace
                 if ev.payload.get("tool") == "optimize"]
        assert seeds == [hash64("optimize", 14, 2), hash64("optimize", 14, 3)]

    def test_penalties_track_accumulated_categories(self, diabetes_run):
        updates = [ev.payload for ev in diabetes_run.trace
                   if ev.payload.get("tool") == "update_penalties"]
        assert [u["categories"] for u in updates] == [
            ["clearance", "permeability"],
            ["clearance", "permeability"],
        ]
        spec = categories_to_penalties(("clearance", "permeability"))
        assert feedback_to_penalties(diabetes_run.verdicts[0]) == spec
        assert all(u["terms"] == len(spec.terms) for u in updates)


class TestGateBehavior:
    def test_rejecting_the_target_fails_the_run(self):
        result = run_pipeline(DIABETES_REQUEST, ScriptedProvider(target="reject"))
        assert not result.success
        assert result.failure_reason == "TargetRejected"
        assert result.iterations == 0
        assert any(ev.payload.get("event") == "TargetRejected" for ev in result.trace)

    def test_steering_text_reaches_the_penalties(self):
        provider = ScriptedProvider(target="approve",
                                    steering=("work on toxicity", ""))
        result = run_pipeline(DIABETES_REQUEST, provider)
        updates = [ev.payload for ev in result.trace
                   if ev.payload.get("tool") == "update_penalties"]
        assert updates[0]["categories"] == ["clearance", "permeability", "toxicity"]
        steer = next(ev.payload for ev in result.trace
                     if ev.payload.get("gate") == "steering")
        assert steer["categories"] == ["toxicity"]

    def test_auto_approve_terminates_with_a_decision(self):
        result = run_pipeline(PipelineRequest(task="pancreatic cancer", fixture="pancreatic"),
                              AutoApproveProvider())
        assert result.iterations <= 3
        assert len(result.verdicts) == result.iterations
        assert result.trace[-1].payload["outcome"] in ("success", "failure")


class TestPancreaticRun:
    def test_reaches_the_undrugged_branch(self):
        result = run_pipeline(PipelineRequest(task="pancreatic cancer", fixture="pancreatic"),
                              AutoApproveProvider())
        assert result.target == "PALLD"
        filt = next(ev.payload for ev in result.trace
                    if ev.payload.get("tool") == "filter_nodes_without_relation")
        assert filt["kept"] == ["PALLD", "RABL3"]
        assert "KRAS" in filt["removed"]

    def test_bounded_loop_across_seeds(self):
        for seed in (4, 5, 6):
            result = run_pipeline(
                PipelineRequest(task="pancreatic cancer", fixture="pancreatic",
                                seed=seed, max_iterations=2),
                AutoApproveProvider(),
            )
            assert result.iterations <= 2
            assert len(result.verdicts) <= 2
            assert result.trace[-1].kind == "exit"


class TestModuleErrorCapture:
    def test_failure_references_the_causal_event(self):
        # seed 0 drives the optimizer to a candidate with no bundled record,
        # so evaluation fails mid-run
        result = run_pipeline(
            PipelineRequest(task="diabetes", seed=0),
            scripted(),
        )
        assert not result.success
        assert result.failure_reason
        final = result.trace[-1]
        assert final.payload["outcome"] == "failure"
        causal = final.payload["causal_seq"]
        error_event = result.trace[causal]
        assert error_event.payload["error"] in result.failure_reason

    def test_trace_stays_balanced_after_failure(self):
        result = run_pipeline(PipelineRequest(task="diabetes", seed=0), scripted())
        stack = []
        for event in result.trace:
            if event.kind == "enter":
                stack.append(event.node)
            elif event.kind == "exit":
                assert stack and stack[-1] == event.node
                stack.pop()
        assert stack == []


class TestRunResultFile:
    def test_result_json_round_trips(self, tmp_path, diabetes_run):
        from drugdesk.orchestrator import write_result_json

        path = tmp_path / "result.json"
        write_result_json(diabetes_run, path)
        doc = json.loads(path.read_text())
        assert doc["success"] is True
        assert doc["target"] == "HNF1B"
        assert doc["iterations"] == 3
        assert [v["decision"] for v in doc["verdicts"]] == [
            "REJECTED", "REJECTED", "APPROVED",
        ]
        assert doc["profiles"] == [diabetes_run.smiles]
