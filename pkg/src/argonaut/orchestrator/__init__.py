from .routing import (
    MIN_TAXA_MATCHES,
    TAXA_LEXICON,
    fallback_role,
    is_taxonomic,
    route,
    violates_role_constraints,
)
from .supervisor import (
    DEFAULT_ITERATION_CAP,
    PLAN_SCHEMA,
    SupervisorDeps,
    maybe_compress,
    plan_decompose,
    resolve_datasets,
    run_turn,
    supervisor_step,
    synthesize_report,
)
from .types import (
    CODING_ROLES,
    TASK_KINDS,
    WORKER_ROLES,
    AgentRole,
    ArtifactRecord,
    LoadedDataset,
    OrchestratorError,
    Plan,
    SessionState,
    StepOutcome,
    Task,
    UnresolvedRef,
)

__all__ = [
    "AgentRole", "ArtifactRecord", "CODING_ROLES", "DEFAULT_ITERATION_CAP",
    "LoadedDataset", "MIN_TAXA_MATCHES", "OrchestratorError", "PLAN_SCHEMA",
    "Plan", "SessionState", "StepOutcome", "SupervisorDeps", "TASK_KINDS",
    "TAXA_LEXICON", "Task", "UnresolvedRef", "WORKER_ROLES", "fallback_role",
    "is_taxonomic", "maybe_compress", "plan_decompose", "resolve_datasets",
    "route", "run_turn", "supervisor_step", "synthesize_report",
    "violates_role_constraints",
]
