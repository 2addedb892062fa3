"""Progressive summarization: partition, compress, rebuild within a budget."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..gateway import Backend, ChatRequest, Message, complete
from .ledger import StateLedger, render_ledger_block

RECENT_WINDOW = 10  # messages kept at full resolution
SUMMARIZE_AFTER = 2 * RECENT_WINDOW  # deterministic trigger
TOKENS_PER_WORD = 1.3  # provider-independent estimate

SUMMARIZE_PROMPT = "Summarize the earlier conversation below, keeping analytic decisions."


class BudgetTooSmall(Exception):
    pass


def count_tokens(text: str) -> int:
    """Whitespace-token count scaled by 1.3, rounded up."""
    return math.ceil(len(text.split()) * TOKENS_PER_WORD)


def message_tokens(message: Message) -> int:
    return count_tokens(message.text_content())


def partition(history: Sequence[Message], k: int) -> tuple[list[Message], list[Message]]:
    """Split history into (old, recent) with the last ``k`` kept recent."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(history) <= k:
        return [], list(history)
    return list(history[:-k]), list(history[-k:])


def should_summarize(history: Sequence[Message], k: int = RECENT_WINDOW) -> bool:
    return len(history) > 2 * k


@dataclass(frozen=True)
class CompressedContext:
    summary_text: str
    covered_message_count: int
    ledger_snapshot: StateLedger


def compress(
    old: Sequence[Message],
    ledger: StateLedger,
    llm: Backend,
    model_tag: str = "fast-model",
) -> CompressedContext:
    """Summarize old messages with a fast model, then deterministically append
    the canonical ledger block so operational state survives regardless of
    what the model wrote."""
    if not old:
        raise ValueError("nothing to compress")
    transcript = "\n".join(f"{m.role}: {m.text_content()}" for m in old)
    request = ChatRequest(
        model_tag=model_tag,
        messages=(Message.text("user", f"{SUMMARIZE_PROMPT}\n\n{transcript}"),),
    )
    response = complete(request, llm)
    summary = response.text.rstrip() + "\n\n" + render_ledger_block(ledger)
    return CompressedContext(
        summary_text=summary,
        covered_message_count=len(old),
        ledger_snapshot=ledger.snapshot(),
    )


@dataclass(frozen=True)
class PromptContext:
    messages: tuple[Message, ...]
    token_count: int
    dropped_messages: int = 0


def build_context(
    compressed: CompressedContext | None,
    recent: Sequence[Message],
    budget_tokens: int,
) -> PromptContext:
    """Assemble [summary?, recent...] within the token budget.

    Only the oldest recent messages are trimmed; the summary (which carries
    the ledger block) and the newest message are never dropped.
    """
    if budget_tokens <= 0:
        raise ValueError("budget_tokens must be positive")
    fixed: list[Message] = []
    if compressed is not None:
        fixed.append(Message.text("system", compressed.summary_text))

    kept = list(recent)
    floor_tokens = sum(message_tokens(m) for m in fixed)
    if kept:
        floor_tokens += message_tokens(kept[-1])
    if floor_tokens > budget_tokens:
        raise BudgetTooSmall(
            f"ledger block plus last message need {floor_tokens} tokens, "
            f"budget is {budget_tokens}"
        )

    dropped = 0
    def total(msgs: list[Message]) -> int:
        return sum(message_tokens(m) for m in fixed + msgs)

    while kept and total(kept) > budget_tokens and len(kept) > 1:
        kept.pop(0)
        dropped += 1
    return PromptContext(
        messages=tuple(fixed + kept),
        token_count=total(kept),
        dropped_messages=dropped,
    )
