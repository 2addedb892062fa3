"""Session lifecycle: workspaces, kernels, turns, artifacts, search."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from ..catalog import InMemoryCatalog, load_corpus
from ..gateway import (
    Backend,
    RecordingBackend,
    ReplayBackend,
    ScriptedBackend,
    load_script_rules,
)
from ..orchestrator import SessionState, SupervisorDeps, run_turn
from ..sandbox import KernelHandle, ProcessKernel, ScriptedKernel, SpawnFailure, create_session
from ..search import RankedResults, agentic_search, baseline_search, simple_llm_search
from .config import ServiceConfig, load_kernel_script
from .events import EventLog, deterministic_clock, wall_clock

ARCHITECTURES = ("baseline", "simple", "agentic")


class SessionNotFound(KeyError):
    pass


class TurnInFlight(RuntimeError):
    pass


class BadArtifactName(ValueError):
    pass


@dataclass
class Session:
    session_id: str
    state: SessionState
    deps: SupervisorDeps
    events: EventLog
    workspace_root: Path
    turn_counter: int = 0
    turn_thread: threading.Thread | None = None

    @property
    def turn_in_flight(self) -> bool:
        return self.turn_thread is not None and self.turn_thread.is_alive()


class SessionManager:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self.config.sessions_root.mkdir(parents=True, exist_ok=True)
        self.catalog = InMemoryCatalog()
        if config.catalog_path is not None:
            self.catalog.ingest_all(load_corpus(config.catalog_path))
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._clock = deterministic_clock if config.deterministic_clock else wall_clock

    # --- backend assembly ---

    def _model_backend(self, session_id: str) -> Backend:
        if self.config.cassette_path is not None and not self.config.record_cassettes:
            return ReplayBackend(self.config.cassette_path)
        if self.config.script_path is not None:
            backend: Backend = ScriptedBackend(load_script_rules(self.config.script_path))
        elif self.config.provider_url is not None:
            from ..gateway import HttpProviderBackend

            tags = self.config.provider_vision_tags
            backend = HttpProviderBackend(
                self.config.provider_url,
                vision_tags=set(tags) if tags is not None else None,
            )
        else:
            raise SpawnFailure(
                "no model backend configured (script, cassette, or provider_url required)"
            )
        if self.config.record_cassettes and self.config.cassette_path is not None:
            backend = RecordingBackend(backend, self.config.cassette_path)
        return backend

    def _kernel_factory(self, scripted: bool):
        def factory(workspace: Path) -> KernelHandle:
            if scripted or self.config.kernel_command is None:
                replies = (
                    load_kernel_script(self.config.kernel_script_path)
                    if self.config.kernel_script_path is not None
                    else []
                )
                from ..sandbox import ScriptedReply

                return ScriptedKernel(replies, workspace, default=ScriptedReply())
            return ProcessKernel(self.config.kernel_command, workspace)

        return factory

    # --- session lifecycle ---

    def create(self, test_mode: bool = False) -> Session:
        workspace, kernel = create_session(
            self.config.sessions_root, self._kernel_factory(scripted=test_mode)
        )
        events = EventLog(
            self.config.sessions_root / f"{workspace.session_id}.events.jsonl",
            clock=self._clock,
        )
        backend = self._model_backend(workspace.session_id)
        deps = SupervisorDeps(
            llm=backend,
            catalog=self.catalog,
            kernel=kernel,
            llm_secondary=backend,
            vlm=backend,
            search_config=self.config.search,
            repair_budget=self.config.repair_budget,
            qc_threshold=self.config.qc_threshold,
            iteration_cap=self.config.iteration_cap,
            emit=events.append,
        )
        session = Session(
            session_id=workspace.session_id,
            state=SessionState(session_id=workspace.session_id),
            deps=deps,
            events=events,
            workspace_root=workspace.root_path,
        )
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            if session_id not in self._sessions:
                raise SessionNotFound(session_id)
            return self._sessions[session_id]

    def post_message(self, session_id: str, text: str) -> int:
        session = self.get(session_id)
        with self._lock:
            if session.turn_in_flight:
                raise TurnInFlight(session_id)
            session.turn_counter += 1
            turn_id = session.turn_counter
            thread = threading.Thread(
                target=run_turn, args=(session.state, session.deps, text), daemon=True
            )
            session.turn_thread = thread
            thread.start()
        return turn_id

    def wait_turn(self, session_id: str, timeout: float = 30.0) -> None:
        session = self.get(session_id)
        if session.turn_thread is not None:
            session.turn_thread.join(timeout=timeout)

    # --- artifacts ---

    def artifact_path(self, session_id: str, name: str) -> Path:
        session = self.get(session_id)
        candidate = Path(name)
        if candidate.is_absolute() or ".." in candidate.parts:
            raise BadArtifactName(name)
        full = (session.workspace_root / candidate).resolve()
        if not full.is_relative_to(session.workspace_root.resolve()):
            raise BadArtifactName(name)
        if not full.is_file():
            raise FileNotFoundError(name)
        return full

    # --- search ---

    def search(self, query_text: str, architecture: str) -> RankedResults:
        if architecture not in ARCHITECTURES:
            raise ValueError(f"unknown architecture {architecture!r}")
        if architecture == "baseline":
            return baseline_search(query_text, self.catalog, top_k=self.config.search.top_k)
        backend = self._model_backend("search")
        if architecture == "simple":
            return simple_llm_search(query_text, self.catalog, backend,
                                     top_k=self.config.search.top_k)
        return agentic_search(query_text, self.catalog, backend, self.config.search)
