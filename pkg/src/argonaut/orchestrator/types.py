"""Supervisor domain types: roles, tasks, plans, session state."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ..catalog import FeatureFlags
from ..gateway import Message
from ..memory import CompressedContext, StateLedger


class OrchestratorError(Exception):
    pass


class UnresolvedRef(OrchestratorError):
    pass


class AgentRole(enum.Enum):
    SUPERVISOR = "supervisor"
    OCEANOGRAPHER = "oceanographer"
    ECOLOGIST = "ecologist"
    VISUALIZATION = "visualization"
    DATAFRAME = "dataframe"
    WRITER = "writer"
    SEARCH = "search"
    WISE = "wise"


WORKER_ROLES = frozenset(r for r in AgentRole if r is not AgentRole.SUPERVISOR)
CODING_ROLES = frozenset(
    {AgentRole.OCEANOGRAPHER, AgentRole.ECOLOGIST, AgentRole.VISUALIZATION,
     AgentRole.DATAFRAME}
)

TASK_KINDS = ("analysis", "visualization", "retrieval", "synthesis")

_ALLOWED_TRANSITIONS = {
    ("pending", "running"),
    ("running", "done"),
    ("running", "failed"),
}


@dataclass
class Task:
    id: str
    description: str
    kind: str
    dataset_refs: tuple[str, ...] = ()
    external_data: bool = False  # planner-emitted: retrieval targets an external field
    status: str = "pending"
    revision_attempted: bool = False

    def __post_init__(self) -> None:
        if self.kind not in TASK_KINDS:
            raise ValueError(f"unknown task kind {self.kind!r}")

    def transition(self, new_status: str) -> None:
        if (self.status, new_status) not in _ALLOWED_TRANSITIONS:
            raise ValueError(f"illegal task transition {self.status} -> {new_status}")
        self.status = new_status


@dataclass
class Plan:
    tasks: list[Task] = field(default_factory=list)
    revision: int = 0

    def bump(self) -> None:
        self.revision += 1

    def first_pending(self) -> Task | None:
        running = [t for t in self.tasks if t.status == "running"]
        if running:
            raise AssertionError("a task is already running")
        for task in self.tasks:
            if task.status == "pending":
                return task
        return None


@dataclass(frozen=True)
class ArtifactRecord:
    name: str  # unique per session; the session-relative path
    media_type: str
    byte_size: int
    path: str


@dataclass(frozen=True)
class LoadedDataset:
    workspace_path: str
    flags: FeatureFlags


@dataclass
class SessionState:
    session_id: str
    history: list[Message] = field(default_factory=list)
    ledger: StateLedger = field(default_factory=StateLedger)
    plan: Plan = field(default_factory=Plan)
    loaded: dict[str, LoadedDataset] = field(default_factory=dict)
    taxonomic_ids: set[str] = field(default_factory=set)
    artifacts: list[ArtifactRecord] = field(default_factory=list)
    supervisor_turns: int = 0
    compressed: CompressedContext | None = None

    def flags_by_ref(self) -> dict[str, FeatureFlags]:
        return {ref: entry.flags for ref, entry in self.loaded.items()}

    def record_artifact(self, record: ArtifactRecord) -> None:
        if any(a.name == record.name for a in self.artifacts):
            self.artifacts = [a for a in self.artifacts if a.name != record.name]
        self.artifacts.append(record)


@dataclass(frozen=True)
class StepOutcome:
    kind: str  # dispatched | turn_complete | cap_exceeded
    task: Task | None = None
    role: AgentRole | None = None
