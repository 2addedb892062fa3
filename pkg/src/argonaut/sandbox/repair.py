"""The traceback-feedback repair loop and cross-model escalation."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Callable

from ..gateway import Backend, ChatRequest, Message, complete
from .execution import ExecutionResult, StructuredTraceback, format_traceback
from .kernel import DEFAULT_TIMEOUT_S, KernelHandle, execute

_FENCE_RE = re.compile(r"```(?:python)?\s*\n(.*?)```", re.DOTALL)

ESCALATION_PROMPT = (
    "A worker agent exhausted its repair attempts on the task below. Every "
    "attempt and its traceback follows; produce an independent fix as a "
    "single fenced python block."
)

Observer = Callable[[str, dict], None]


def extract_code(reply_text: str) -> str | None:
    """First fenced code block of a model reply, or None."""
    match = _FENCE_RE.search(reply_text)
    if match is None:
        return None
    code = match.group(1).strip("\n")
    return code if code.strip() else None


def no_code_result() -> ExecutionResult:
    return ExecutionResult(
        status="error",
        traceback=StructuredTraceback(
            exception_type="NoCode",
            message="model reply contained no fenced code block",
        ),
    )


@dataclass(frozen=True)
class Attempt:
    code: str
    result: ExecutionResult
    critique: str | None = None


@dataclass(frozen=True)
class RepairContext:
    task_description: str
    attempts: tuple[Attempt, ...] = ()
    budget_remaining: int = 0


@dataclass(frozen=True)
class RepairOutcome:
    status: str  # success | escalated | failed
    result: ExecutionResult | None
    context: RepairContext

    @property
    def ok(self) -> bool:
        return self.result is not None and self.result.ok


def generation_prompt(worker_role: str, task_description: str,
                      extra_context: tuple[str, ...] = ()) -> str:
    lines = [
        f"You are the {worker_role} agent of a scientific data analysis system.",
        f"Task: {task_description}",
    ]
    lines.extend(extra_context)
    lines.append("Respond with a single fenced python code block.")
    return "\n".join(lines)


def repair_loop(
    task_description: str,
    worker_role: str,
    kernel: KernelHandle,
    llm_primary: Backend,
    llm_secondary: Backend | None,
    budget: int = 3,
    *,
    model_tag: str = "primary-model",
    secondary_model_tag: str = "secondary-model",
    timeout_s: float = DEFAULT_TIMEOUT_S,
    extra_context: tuple[str, ...] = (),
    observer: Observer | None = None,
) -> RepairOutcome:
    """Generate-execute-repair until success, then escalate once on exhaustion.

    Each failed attempt's traceback is appended to the generating context
    before the next generation. At most ``budget`` primary attempts run, plus
    a single escalation execution, so the kernel sees at most budget+1
    submissions.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")

    messages = [Message.text("user", generation_prompt(worker_role, task_description,
                                                       extra_context))]
    attempts: list[Attempt] = []
    for attempt_no in range(1, budget + 1):
        request = ChatRequest(model_tag=model_tag, messages=tuple(messages))
        reply = complete(request, llm_primary)
        code = extract_code(reply.text)
        if code is None:
            result = no_code_result()
            code = ""
        else:
            if observer:
                observer("code_submitted", {"role": worker_role, "attempt": attempt_no,
                                            "code": code})
            result = execute(kernel, code, timeout_s=timeout_s)
            if observer:
                observer("execution_result", {
                    "role": worker_role, "attempt": attempt_no, "status": result.status,
                    "stdout": result.stdout,
                    "traceback": result.traceback.to_json() if result.traceback else None,
                })
        attempts.append(Attempt(code=code, result=result))
        if result.ok:
            return RepairOutcome(
                status="success",
                result=result,
                context=RepairContext(task_description, tuple(attempts),
                                      budget_remaining=budget - attempt_no),
            )
        messages.append(Message.text("assistant", reply.text))
        messages.append(Message.text(
            "user",
            f"Attempt {attempt_no} failed.\nTraceback:\n"
            f"{format_traceback(result.traceback)}\n"
            "Revise the code and respond with a single fenced python block.",
        ))

    context = RepairContext(task_description, tuple(attempts), budget_remaining=0)
    if llm_secondary is None:
        return RepairOutcome(status="failed", result=None, context=context)

    code, result = escalate(context, llm_secondary, kernel,
                            model_tag=secondary_model_tag, timeout_s=timeout_s,
                            observer=observer)
    context = replace(context, attempts=context.attempts + (Attempt(code=code, result=result),))
    if result.ok:
        return RepairOutcome(status="escalated", result=result, context=context)
    return RepairOutcome(status="failed", result=None, context=context)


def escalation_prompt(ctx: RepairContext) -> str:
    lines = [ESCALATION_PROMPT, "", f"Task: {ctx.task_description}"]
    for i, attempt in enumerate(ctx.attempts, start=1):
        lines += [
            "",
            f"--- attempt {i} ---",
            "Code:",
            attempt.code,
            "Traceback:",
            format_traceback(attempt.result.traceback) if attempt.result.traceback else "(none)",
        ]
    return "\n".join(lines)


def escalate(
    ctx: RepairContext,
    llm_secondary: Backend,
    kernel: KernelHandle,
    *,
    model_tag: str = "secondary-model",
    timeout_s: float = DEFAULT_TIMEOUT_S,
    observer: Observer | None = None,
) -> tuple[str, ExecutionResult]:
    """One generation by the secondary model, one execution, no retries.

    The prompt embeds every prior attempt's code and traceback verbatim.
    """
    if not ctx.attempts:
        raise ValueError("escalation requires at least one prior attempt")
    request = ChatRequest(
        model_tag=model_tag,
        messages=(Message.text("user", escalation_prompt(ctx)),),
    )
    reply = complete(request, llm_secondary)
    code = extract_code(reply.text)
    if code is None:
        return "", no_code_result()
    if observer:
        observer("code_submitted", {"role": "wise", "attempt": len(ctx.attempts) + 1,
                                    "code": code})
    result = execute(kernel, code, timeout_s=timeout_s)
    if observer:
        observer("execution_result", {
            "role": "wise", "attempt": len(ctx.attempts) + 1, "status": result.status,
            "stdout": result.stdout,
            "traceback": result.traceback.to_json() if result.traceback else None,
        })
    return code, result
