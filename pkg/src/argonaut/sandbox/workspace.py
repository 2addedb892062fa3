"""Session workspaces: one UUID directory per session, kernel pinned to it."""

from __future__ import annotations

import os
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable

from .execution import SpawnFailure
from .kernel import KernelHandle


@dataclass(frozen=True)
class Workspace:
    session_id: str
    root_path: Path
    created_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc))

    def contains(self, path: str | Path) -> bool:
        candidate = Path(path)
        if not candidate.is_absolute():
            candidate = self.root_path / candidate
        try:
            candidate.resolve().relative_to(self.root_path.resolve())
            return True
        except ValueError:
            return False


KernelFactory = Callable[[Path], KernelHandle]


def create_session(
    workspace_root_dir: str | Path, kernel_factory: KernelFactory
) -> tuple[Workspace, KernelHandle]:
    """Allocate a fresh UUID workspace and start its kernel."""
    root = Path(workspace_root_dir)
    session_id = str(uuid.uuid4())
    session_dir = root / session_id
    try:
        session_dir.mkdir(parents=True, exist_ok=False)
    except OSError as exc:
        raise SpawnFailure(f"cannot create workspace under {root}: {exc}") from exc
    if not os.access(session_dir, os.W_OK):
        raise SpawnFailure(f"workspace {session_dir} is not writable")
    workspace = Workspace(session_id=session_id, root_path=session_dir)
    kernel = kernel_factory(session_dir)
    return workspace, kernel
