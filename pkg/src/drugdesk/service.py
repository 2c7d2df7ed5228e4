"""Local HTTP API exposing run lifecycle and pending human decisions.

Sessions live in an in-memory table behind one coarse lock. Each run's
pipeline executes on its own thread; at a human gate the thread parks on
an event until a decision is posted. Endpoints only touch the table
under the lock, never the pipeline compute, so no request blocks on a
run. Polling only; trace events are served incrementally by sequence
number and profiles as CSV text, the same schemas as the file formats.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from .fixtures import UnknownFixture
from .orchestrator import (
    BadDecision,
    BadRequestConfig,
    EmptyInput,
    PipelineRequest,
    RunResult,
    TraceEvent,
    fixture_set,
    normalize_input,
    request_from_dict,
    run_pipeline,
    validate_decision,
)
from .pbpk import profile_csv_text

RUNNING = "running"
AWAITING = "awaiting_decision"
FINISHED_SUCCESS = "finished_success"
FINISHED_FAILURE = "finished_failure"


class NotFound(KeyError):
    pass


class Conflict(RuntimeError):
    pass


@dataclass
class RunSession:
    id: str
    request: PipelineRequest
    status: str = RUNNING
    pending: dict | None = None  # {"gate", "context"} iff awaiting_decision
    result: RunResult | None = None
    error: str | None = None
    trace: list[TraceEvent] = field(default_factory=list)
    decision: dict | None = None
    wake: threading.Event = field(default_factory=threading.Event)

    def view(self) -> dict:
        doc = {"id": self.id, "status": self.status, "pending": self.pending,
               "result": self.result.to_json() if self.result else None}
        if self.error is not None:
            doc["error"] = self.error
        return doc


class _GateProvider:
    """Decision provider that parks the pipeline thread at each gate until
    the registry feeds it a posted decision."""

    def __init__(self, session: RunSession, lock: threading.Lock):
        self._session = session
        self._lock = lock

    def decide(self, gate: str, context: dict) -> dict:
        session = self._session
        with self._lock:
            session.pending = {"gate": gate, "context": context}
            session.status = AWAITING
            session.decision = None
            session.wake = threading.Event()
            wake = session.wake
        wake.wait()
        with self._lock:
            decision = session.decision
            session.decision = None
        return decision


class RunRegistry:
    """In-memory session table. One lock guards every mutation; gates park
    outside the lock so a waiting run never blocks an endpoint."""

    def __init__(self):
        self.lock = threading.Lock()
        self._sessions: dict[str, RunSession] = {}

    def create(self, request: PipelineRequest) -> RunSession:
        session = RunSession(id=uuid.uuid4().hex, request=request)
        with self.lock:
            self._sessions[session.id] = session
        provider = _GateProvider(session, self.lock)

        def sink(event: TraceEvent) -> None:
            with self.lock:
                session.trace.append(event)

        def work() -> None:
            try:
                result = run_pipeline(request, provider, trace_sink=sink)
            except Exception as exc:
                with self.lock:
                    session.error = f"{type(exc).__name__}: {exc}"
                    session.status = FINISHED_FAILURE
                    session.pending = None
                return
            with self.lock:
                session.result = result
                session.pending = None
                session.status = FINISHED_SUCCESS if result.success else FINISHED_FAILURE

        thread = threading.Thread(target=work, name=f"run-{session.id}", daemon=True)
        thread.start()
        return session

    def get(self, run_id: str) -> RunSession:
        with self.lock:
            try:
                return self._sessions[run_id]
            except KeyError:
                raise NotFound(run_id) from None

    def view(self, run_id: str) -> dict:
        session = self.get(run_id)
        with self.lock:
            return session.view()

    def submit_decision(self, run_id: str, gate: str, payload: dict) -> dict:
        """Feed one decision to a parked run. Validation happens before the
        gate is consumed, so a malformed body leaves the run parked."""
        session = self.get(run_id)
        with self.lock:
            if session.status != AWAITING or session.pending is None:
                raise Conflict(f"run {run_id} is not awaiting a decision")
            expected = session.pending["gate"]
            if gate != expected:
                raise Conflict(f"pending gate is {expected!r}, not {gate!r}")
            decision = validate_decision(gate, payload)
            session.decision = decision
            session.pending = None
            session.status = RUNNING
            session.wake.set()
        return {"ok": True, "gate": gate, "status": RUNNING}

    def trace_since(self, run_id: str, since: int) -> dict:
        """Events with seq >= since, plus the cursor to pass next time."""
        session = self.get(run_id)
        with self.lock:
            events = [ev for ev in session.trace if ev.seq >= since]
            next_since = len(session.trace)
            return {
                "events": [ev.to_json() for ev in events],
                "next": next_since,
                "status": session.status,
            }

    def profile_csv(self, run_id: str, candidate: str) -> str:
        session = self.get(run_id)
        with self.lock:
            result = session.result
        if result is None or candidate not in result.profiles:
            raise NotFound(f"no profile for {candidate!r} on run {run_id}")
        return profile_csv_text(result.profiles[candidate])


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(registry: RunRegistry | None = None) -> FastAPI:
    app = FastAPI(title="drugdesk service", docs_url=None, redoc_url=None)
    # the companion UI is served from its own dev origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    reg = registry if registry is not None else RunRegistry()
    app.state.registry = reg

    async def read_json(request: Request) -> dict:
        raw = await request.body()
        try:
            doc = json.loads(raw) if raw else {}
        except ValueError:
            raise BadRequestConfig("body is not valid JSON") from None
        if not isinstance(doc, dict):
            raise BadRequestConfig("body must be a JSON object")
        return doc

    @app.exception_handler(NotFound)
    async def on_not_found(request, exc):
        return _error(404, "not_found", str(exc.args[0]) if exc.args else "not found")

    @app.exception_handler(Conflict)
    async def on_conflict(request, exc):
        return _error(409, "conflict", str(exc))

    @app.exception_handler(BadRequestConfig)
    async def on_bad_request(request, exc):
        return _error(400, "bad_request", str(exc))

    @app.exception_handler(BadDecision)
    async def on_bad_decision(request, exc):
        return _error(400, "bad_request", str(exc))

    @app.exception_handler(UnknownFixture)
    async def on_unknown_fixture(request, exc):
        return _error(400, "unknown_fixture", f"unknown fixture set: {exc.args[0]}")

    @app.post("/runs", status_code=201)
    async def create_run(request: Request):
        doc = await read_json(request)
        run_request = request_from_dict(doc, where="body")
        # fail fast on anything the pipeline would reject before tracing
        fixture_set(run_request.fixture)
        try:
            normalize_input(run_request.task)
        except EmptyInput:
            raise BadRequestConfig("task text is empty") from None
        session = reg.create(run_request)
        # the session's live status may already have advanced; the response
        # describes the resource as created
        return {"id": session.id, "status": RUNNING}

    @app.get("/runs/{run_id}")
    async def get_run(run_id: str):
        return reg.view(run_id)

    @app.post("/runs/{run_id}/decision")
    async def post_decision(run_id: str, request: Request):
        doc = await read_json(request)
        gate = doc.pop("gate", None)
        if not isinstance(gate, str):
            raise BadRequestConfig("decision body needs a 'gate' string")
        return reg.submit_decision(run_id, gate, doc)

    @app.get("/runs/{run_id}/trace")
    async def get_trace(run_id: str, request: Request):
        raw = request.query_params.get("since", "0")
        try:
            since = int(raw)
        except ValueError:
            raise BadRequestConfig(f"since must be an integer, got {raw!r}") from None
        return reg.trace_since(run_id, since)

    @app.get("/runs/{run_id}/profile/{candidate:path}")
    async def get_profile(run_id: str, candidate: str):
        text = reg.profile_csv(run_id, candidate)
        return PlainTextResponse(text, media_type="text/csv")

    return app
