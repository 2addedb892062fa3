"""The operational-state ledger that summarization must preserve."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path


class MemoryError_(Exception):
    pass


class IsolationViolation(MemoryError_):
    """An event referenced a path outside the session workspace."""


@dataclass
class StateLedger:
    """Append/update-only record of variables, dataset ids, paths, results."""

    variables: dict[str, str] = field(default_factory=dict)
    dataset_ids: set[str] = field(default_factory=set)
    file_paths: set[str] = field(default_factory=set)
    results: dict[str, str] = field(default_factory=dict)

    def snapshot(self) -> "StateLedger":
        return StateLedger(
            variables=dict(self.variables),
            dataset_ids=set(self.dataset_ids),
            file_paths=set(self.file_paths),
            results=dict(self.results),
        )

    def all_keys(self) -> set[str]:
        return (
            set(self.variables)
            | self.dataset_ids
            | self.file_paths
            | set(self.results)
        )


def render_ledger_block(ledger: StateLedger) -> str:
    """Canonical deterministic rendering (sorted keys), appended to summaries."""
    lines = ["[state-ledger]"]
    lines.append("variables: " + ", ".join(
        f"{name}:{hint}" if hint else name for name, hint in sorted(ledger.variables.items())
    ))
    lines.append("dataset_ids: " + ", ".join(sorted(ledger.dataset_ids)))
    lines.append("file_paths: " + ", ".join(sorted(ledger.file_paths)))
    lines.append("results: " + "; ".join(
        f"{label}={value}" for label, value in sorted(ledger.results.items())
    ))
    lines.append("[/state-ledger]")
    return "\n".join(lines)


def _check_workspace(path: str, workspace_root: str | Path | None) -> None:
    if workspace_root is None:
        return
    root = Path(workspace_root).resolve()
    resolved = Path(path)
    if not resolved.is_absolute():
        resolved = root / resolved
    resolved = resolved.resolve()
    if not resolved.is_relative_to(root):
        raise IsolationViolation(f"{path} is outside workspace {root}")


def update_ledger(ledger: StateLedger, event, workspace_root: str | Path | None = None) -> StateLedger:
    """Merge an event into the ledger (idempotent; nothing is ever dropped).

    Events are matched structurally: execution results contribute declared
    bindings and new artifacts, ranked search results contribute dataset ids,
    artifact records contribute file paths.
    """
    bindings = getattr(event, "declared_bindings", None)
    if bindings is not None:
        for name in bindings:
            ledger.variables.setdefault(name, "")
        for artifact in getattr(event, "new_artifacts", ()) or ():
            path = getattr(artifact, "path", None) or artifact.get("path")
            _check_workspace(path, workspace_root)
            ledger.file_paths.add(str(path))
        return ledger

    entries = getattr(event, "entries", None)
    if entries is not None:
        for entry in entries:
            ledger.dataset_ids.add(entry.dataset_id)
        return ledger

    path = getattr(event, "path", None)
    if path is not None:
        _check_workspace(str(path), workspace_root)
        ledger.file_paths.add(str(path))
        return ledger

    raise TypeError(f"cannot extract ledger state from {type(event).__name__}")
