from .context import (
    RECENT_WINDOW,
    SUMMARIZE_AFTER,
    BudgetTooSmall,
    CompressedContext,
    PromptContext,
    build_context,
    compress,
    count_tokens,
    message_tokens,
    partition,
    should_summarize,
)
from .ledger import IsolationViolation, StateLedger, render_ledger_block, update_ledger

__all__ = [
    "BudgetTooSmall", "CompressedContext", "IsolationViolation",
    "PromptContext", "RECENT_WINDOW", "SUMMARIZE_AFTER", "StateLedger",
    "build_context", "compress", "count_tokens", "message_tokens",
    "partition", "render_ledger_block", "should_summarize", "update_ledger",
]
