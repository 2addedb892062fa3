from .execution import (
    ExecutionResult,
    KernelDead,
    NewArtifact,
    SandboxError,
    SpawnFailure,
    StructuredTraceback,
    TracebackFrame,
    diff_artifacts,
    format_traceback,
    media_type_for,
    scan_workspace,
)
from .kernel import (
    DEFAULT_TIMEOUT_S,
    PROTOCOL_VERSION,
    KernelHandle,
    ProcessKernel,
    ScriptedKernel,
    ScriptedReply,
    execute,
    timeout_result,
)
from .repair import (
    Attempt,
    RepairContext,
    RepairOutcome,
    escalate,
    escalation_prompt,
    extract_code,
    generation_prompt,
    no_code_result,
    repair_loop,
)
from .workspace import Workspace, create_session

__all__ = [
    "Attempt", "DEFAULT_TIMEOUT_S", "ExecutionResult", "KernelDead",
    "KernelHandle", "NewArtifact", "PROTOCOL_VERSION", "ProcessKernel",
    "RepairContext", "RepairOutcome", "SandboxError", "ScriptedKernel",
    "ScriptedReply", "SpawnFailure", "StructuredTraceback", "TracebackFrame",
    "Workspace", "create_session", "diff_artifacts", "escalate",
    "escalation_prompt", "execute", "extract_code", "format_traceback",
    "generation_prompt", "media_type_for", "no_code_result", "repair_loop",
    "scan_workspace", "timeout_result",
]
