"""The supervisor: plan decomposition, sequential dispatch, report synthesis."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from ..catalog import InMemoryCatalog, derive_feature_flags
from ..gateway import Backend, ChatRequest, ImagePart, Message, TextPart, complete
from ..memory import (
    RECENT_WINDOW,
    compress,
    partition,
    render_ledger_block,
    should_summarize,
    update_ledger,
)
from ..sandbox import KernelHandle, RepairOutcome, media_type_for, repair_loop
from ..search import RankedResults, SearchConfig, agentic_search
from ..visualqc import DEFAULT_THRESHOLD, FigureWorkerDeps, QcRecord, qc_loop
from .routing import fallback_role, is_taxonomic, route, violates_role_constraints
from .types import (
    AgentRole,
    ArtifactRecord,
    CODING_ROLES,
    LoadedDataset,
    OrchestratorError,
    Plan,
    SessionState,
    StepOutcome,
    Task,
    UnresolvedRef,
)

DEFAULT_ITERATION_CAP = 20

PLAN_PROMPT = "Decompose the user request into ordered sub-tasks."
REVISE_PROMPT = "A sub-task failed; revise the remaining plan."
REPORT_PROMPT = "Write a coherent scientific narrative from the session results below."

PLAN_SCHEMA = {
    "type": "object",
    "properties": {
        "tasks": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "description": {"type": "string"},
                    "kind": {"type": "string",
                             "enum": ["analysis", "visualization", "retrieval", "synthesis"]},
                    "dataset_refs": {"type": "array", "items": {"type": "string"}},
                    "external_data": {"type": "boolean"},
                },
                "required": ["description", "kind"],
            },
        }
    },
    "required": ["tasks"],
}

EventSink = Callable[[str, dict], None]


@dataclass
class SupervisorDeps:
    llm: Backend
    catalog: InMemoryCatalog
    kernel: KernelHandle
    llm_secondary: Backend | None = None
    vlm: Backend | None = None
    search_config: SearchConfig = field(default_factory=SearchConfig)
    repair_budget: int = 3
    qc_threshold: int = DEFAULT_THRESHOLD
    iteration_cap: int = DEFAULT_ITERATION_CAP
    planner_model_tag: str = "planner-model"
    writer_model_tag: str = "writer-model"
    fast_model_tag: str = "fast-model"
    emit: EventSink | None = None

    def sink(self, kind: str, payload: dict) -> None:
        if self.emit is not None:
            self.emit(kind, payload)


def _task_payload(task: Task) -> dict:
    return {
        "id": task.id,
        "description": task.description,
        "kind": task.kind,
        "dataset_refs": list(task.dataset_refs),
        "status": task.status,
    }


def _plan_payload(plan: Plan) -> dict:
    return {"revision": plan.revision, "tasks": [_task_payload(t) for t in plan.tasks]}


def plan_decompose(user_msg: str, state: SessionState, llm: Backend,
                   model_tag: str = "planner-model", failure_note: str | None = None) -> Plan:
    """Schema-constrained planning call; plans must be non-empty."""
    if not user_msg.strip():
        raise ValueError("user message must be non-empty")
    lines = [REVISE_PROMPT if failure_note else PLAN_PROMPT, "", f"Request: {user_msg}"]
    if failure_note:
        lines.append(f"Failure: {failure_note}")
    if state.loaded:
        lines.append("Loaded datasets:")
        for ref, entry in sorted(state.loaded.items()):
            lines.append(f"- {ref} ({'gridded' if entry.flags.is_gridded else 'tabular'})")
    lines.append("Respond with JSON: tasks[description, kind, dataset_refs, external_data].")
    request = ChatRequest(
        model_tag=model_tag,
        messages=(Message.text("user", "\n".join(lines)),),
        response_schema=PLAN_SCHEMA,
    )
    response = complete(request, llm)
    revision = state.plan.revision + 1
    tasks = [
        Task(
            id=f"t{revision}.{i}",
            description=doc["description"],
            kind=doc["kind"],
            dataset_refs=tuple(doc.get("dataset_refs", [])),
            external_data=bool(doc.get("external_data", False)),
        )
        for i, doc in enumerate(response.structured["tasks"], start=1)
    ]
    plan = Plan(tasks=tasks, revision=revision)
    return plan


def resolve_datasets(state: SessionState, deps: SupervisorDeps, refs: tuple[str, ...]) -> None:
    """Pull metadata for referenced datasets into the session (once each)."""
    for ref in refs:
        if ref in state.loaded:
            continue
        try:
            meta = deps.catalog.get(ref)
        except KeyError as exc:
            raise UnresolvedRef(f"dataset {ref} not in catalog") from exc
        flags = derive_feature_flags(meta)
        safe = ref.replace("/", "_")
        state.loaded[ref] = LoadedDataset(workspace_path=f"data/{safe}", flags=flags)
        if is_taxonomic(meta):
            state.taxonomic_ids.add(ref)
        update_ledger(state.ledger, _DatasetRef(ref))


@dataclass(frozen=True)
class _DatasetRef:
    dataset_id: str

    @property
    def entries(self):
        return (self,)


def _ledger_context(state: SessionState) -> tuple[str, ...]:
    block = render_ledger_block(state.ledger)
    return (block,) if state.ledger.all_keys() else ()


def _record_artifacts(state: SessionState, deps: SupervisorDeps,
                      result_artifacts, workspace_root: Path) -> None:
    for artifact in result_artifacts:
        full = workspace_root / artifact.path
        size = full.stat().st_size if full.exists() else 0
        record = ArtifactRecord(
            name=artifact.path, media_type=artifact.media_type,
            byte_size=size, path=artifact.path,
        )
        state.record_artifact(record)
        state.ledger.file_paths.add(artifact.path)


def _dispatch_search(state: SessionState, deps: SupervisorDeps, task: Task) -> bool:
    results: RankedResults = agentic_search(
        task.description, deps.catalog, deps.llm, deps.search_config
    )
    update_ledger(state.ledger, results)
    deps.sink("search_results", {
        "task": task.id,
        "entries": [
            {"dataset_id": e.dataset_id, "relevance_score": e.relevance_score,
             "rationale": e.rationale}
            for e in results.entries
        ],
        "rounds": results.rounds,
    })
    state.ledger.results[f"search:{task.id}"] = ",".join(results.ids())
    return True


def _dispatch_coding(state: SessionState, deps: SupervisorDeps, task: Task,
                     role: AgentRole) -> bool:
    outcome: RepairOutcome = repair_loop(
        task.description,
        role.value,
        deps.kernel,
        deps.llm,
        deps.llm_secondary,
        deps.repair_budget,
        extra_context=_ledger_context(state),
        observer=deps.emit,
    )
    if outcome.result is not None:
        update_ledger(state.ledger, outcome.result, workspace_root=deps.kernel.workspace_root)
        _record_artifacts(state, deps, outcome.result.new_artifacts,
                          Path(deps.kernel.workspace_root))
    if outcome.ok:
        state.ledger.results[f"task:{task.id}"] = "ok"
        return True
    deps.sink("error", {"task": task.id, "detail": "worker failed after repair/escalation"})
    return False


def _dispatch_figure(state: SessionState, deps: SupervisorDeps, task: Task) -> bool:
    if deps.vlm is None:
        raise ValueError("visualization tasks require a vision backend")
    figure_deps = FigureWorkerDeps(
        kernel=deps.kernel,
        llm_primary=deps.llm,
        llm_secondary=deps.llm_secondary,
        vlm=deps.vlm,
        budget=deps.repair_budget,
        observer=deps.emit,
    )
    record: QcRecord = qc_loop(task.description, figure_deps, threshold=deps.qc_threshold)
    workspace_root = Path(deps.kernel.workspace_root)
    for iteration in record.iterations:
        artifact_path = iteration.artifact_path
        full = workspace_root / artifact_path
        state.record_artifact(ArtifactRecord(
            name=artifact_path, media_type=media_type_for(artifact_path),
            byte_size=full.stat().st_size if full.exists() else 0, path=artifact_path,
        ))
        state.ledger.file_paths.add(artifact_path)
    if record.iterations:
        deps.sink("figure", {
            "task": task.id,
            "artifact": record.iterations[-1].artifact_path,
            "scores": record.scores,
            "accepted": record.accepted,
        })
        state.ledger.results[f"figure:{task.id}"] = (
            "scores " + "->".join(str(s) for s in record.scores)
        )
    return record.accepted


def synthesize_report(state: SessionState, deps: SupervisorDeps) -> str:
    """Writer-agent narrative over ledger results and artifacts.

    Image artifacts are attached as vision parts so the writer can describe
    the figures, not just their filenames.
    """
    if not any(t.status == "done" for t in state.plan.tasks):
        raise ValueError("report synthesis requires at least one completed task")
    lines = [REPORT_PROMPT, "", render_ledger_block(state.ledger), ""]
    if state.artifacts:
        lines.append("Artifacts:")
        for artifact in state.artifacts:
            lines.append(f"- {artifact.name} ({artifact.media_type}, {artifact.byte_size} B)")
    parts: list = [TextPart("\n".join(lines))]
    workspace_root = Path(deps.kernel.workspace_root)
    for artifact in state.artifacts:
        if artifact.media_type.startswith("image/"):
            full = workspace_root / artifact.path
            if full.exists():
                parts.append(ImagePart(full.read_bytes(), artifact.media_type))
    backend = deps.vlm if (len(parts) > 1 and deps.vlm is not None) else deps.llm
    request = ChatRequest(
        model_tag=deps.writer_model_tag,
        messages=(Message(role="user", parts=tuple(parts)),),
    )
    response = complete(request, backend)
    state.history.append(Message.text("assistant", response.text))
    return response.text


def supervisor_step(state: SessionState, deps: SupervisorDeps) -> StepOutcome:
    """Pick, route, constrain, dispatch the first pending task."""
    if state.supervisor_turns + 1 > deps.iteration_cap:
        message = "iteration cap reached; returning partial results"
        state.history.append(Message.text("assistant", message))
        deps.sink("error", {"detail": message})
        return StepOutcome(kind="cap_exceeded")
    task = state.plan.first_pending()
    if task is None:
        return StepOutcome(kind="turn_complete")
    state.supervisor_turns += 1

    try:
        resolve_datasets(state, deps, task.dataset_refs)
        flags = state.flags_by_ref()
        role = route(task, flags, taxonomic=state.taxonomic_ids)
    except OrchestratorError as exc:
        task.transition("running")
        task.transition("failed")
        deps.sink("error", {"task": task.id, "detail": str(exc)})
        return StepOutcome(kind="dispatched", task=task, role=None)
    violation = violates_role_constraints(task, role, flags)
    if violation is not None:
        rerouted = fallback_role(task, role, flags)
        if rerouted is None or violates_role_constraints(task, rerouted, flags):
            task.transition("running")
            task.transition("failed")
            deps.sink("error", {"task": task.id, "detail": violation})
            return StepOutcome(kind="dispatched", task=task, role=role)
        role = rerouted

    task.transition("running")
    state.plan.bump()
    deps.sink("agent_action", {"task": task.id, "role": role.value,
                               "description": task.description})
    try:
        if role is AgentRole.SEARCH:
            ok = _dispatch_search(state, deps, task)
        elif role is AgentRole.WRITER:
            report = synthesize_report(state, deps)
            deps.sink("report", {"task": task.id, "text": report})
            state.ledger.results[f"report:{task.id}"] = "written"
            ok = True
        elif task.kind == "visualization":
            ok = _dispatch_figure(state, deps, task)
        elif role in CODING_ROLES:
            ok = _dispatch_coding(state, deps, task, role)
        else:
            raise AssertionError(f"no executor for role {role}")
    except Exception as exc:  # worker infrastructure failure
        deps.sink("error", {"task": task.id, "detail": str(exc)})
        ok = False

    task.transition("done" if ok else "failed")
    state.plan.bump()
    if not ok and not task.revision_attempted:
        task.revision_attempted = True
        _attempt_revision(state, deps, task)
    return StepOutcome(kind="dispatched", task=task, role=role)


def _attempt_revision(state: SessionState, deps: SupervisorDeps, failed: Task) -> None:
    try:
        plan = plan_decompose(
            failed.description, state, deps.llm, model_tag=deps.planner_model_tag,
            failure_note=f"task {failed.id} ({failed.kind}) failed",
        )
    except Exception as exc:  # planner could not revise; surface and move on
        deps.sink("error", {"task": failed.id, "detail": f"revision failed: {exc}"})
        return
    kept = [t for t in state.plan.tasks if t.status != "pending"]
    state.plan.tasks = kept + plan.tasks
    state.plan.revision = plan.revision
    deps.sink("plan", _plan_payload(state.plan))


def maybe_compress(state: SessionState, deps: SupervisorDeps, k: int = RECENT_WINDOW) -> None:
    if not should_summarize(state.history, k):
        return
    old, recent = partition(state.history, k)
    state.compressed = compress(old, state.ledger, deps.llm, model_tag=deps.fast_model_tag)
    state.history = recent


def run_turn(state: SessionState, deps: SupervisorDeps, user_msg: str) -> None:
    """One full supervisor turn: plan, dispatch sequentially, close the turn."""
    state.supervisor_turns = 0
    state.history.append(Message.text("user", user_msg))
    maybe_compress(state, deps)
    try:
        plan = plan_decompose(user_msg, state, deps.llm, model_tag=deps.planner_model_tag)
    except Exception as exc:
        deps.sink("error", {"detail": f"planning failed: {exc}"})
        deps.sink("turn_done", {"status": "error"})
        return
    state.plan = plan
    deps.sink("plan", _plan_payload(plan))
    try:
        while True:
            outcome = supervisor_step(state, deps)
            if outcome.kind == "turn_complete":
                deps.sink("turn_done", {"status": "ok"})
                return
            if outcome.kind == "cap_exceeded":
                deps.sink("turn_done", {"status": "partial"})
                return
    except Exception as exc:
        # every turn must end with a terminal event, even on internal faults
        deps.sink("error", {"detail": f"turn aborted: {exc}"})
        deps.sink("turn_done", {"status": "error"})
