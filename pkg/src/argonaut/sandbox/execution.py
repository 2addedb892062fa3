"""Execution results, structured tracebacks, artifact scanning."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

MEDIA_TYPES = {
    ".png": "image/png",
    ".svg": "image/svg+xml",
    ".jpg": "image/jpeg",
    ".jpeg": "image/jpeg",
    ".csv": "text/csv",
    ".txt": "text/plain",
    ".json": "application/json",
    ".html": "text/html",
    ".pdf": "application/pdf",
    ".nc": "application/x-netcdf",
}


class SandboxError(Exception):
    pass


class SpawnFailure(SandboxError):
    pass


class KernelDead(SandboxError):
    """Connection to the worker lost; the caller may recreate the session."""


def media_type_for(path: str | Path) -> str:
    return MEDIA_TYPES.get(Path(path).suffix.lower(), "application/octet-stream")


@dataclass(frozen=True)
class TracebackFrame:
    file: str
    line: int
    code_line: str


@dataclass(frozen=True)
class StructuredTraceback:
    exception_type: str
    message: str
    frames: tuple[TracebackFrame, ...] = ()

    @classmethod
    def from_json(cls, doc: dict) -> "StructuredTraceback":
        frames = tuple(
            TracebackFrame(f.get("file", "?"), int(f.get("line", 0)), f.get("code_line", ""))
            for f in doc.get("frames", [])
        )
        return cls(exception_type=doc["exception_type"], message=doc.get("message", ""),
                   frames=frames)

    def to_json(self) -> dict:
        return {
            "exception_type": self.exception_type,
            "message": self.message,
            "frames": [
                {"file": f.file, "line": f.line, "code_line": f.code_line} for f in self.frames
            ],
        }


def format_traceback(tb: StructuredTraceback) -> str:
    """Canonical text rendering; escalation prompts must embed this verbatim."""
    lines = [f"{tb.exception_type}: {tb.message}"]
    for frame in tb.frames:
        lines.append(f'  File "{frame.file}", line {frame.line}')
        if frame.code_line:
            lines.append(f"    {frame.code_line}")
    return "\n".join(lines)


@dataclass(frozen=True)
class NewArtifact:
    path: str  # workspace-relative
    media_type: str


@dataclass(frozen=True)
class ExecutionResult:
    status: str  # ok | error
    stdout: str = ""
    stderr: str = ""
    traceback: StructuredTraceback | None = None
    new_artifacts: tuple[NewArtifact, ...] = ()
    declared_bindings: tuple[str, ...] = ()
    duration_ms: float = 0.0

    def __post_init__(self) -> None:
        if (self.status == "error") != (self.traceback is not None):
            raise ValueError("status=error exactly when a traceback is present")

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def scan_workspace(root: str | Path) -> dict[str, tuple[int, int]]:
    """Snapshot of workspace files: relative path -> (mtime_ns, size)."""
    root = Path(root)
    out: dict[str, tuple[int, int]] = {}
    for p in root.rglob("*"):
        if p.is_file():
            st = p.stat()
            out[str(p.relative_to(root))] = (st.st_mtime_ns, st.st_size)
    return out


def diff_artifacts(
    before: dict[str, tuple[int, int]], after: dict[str, tuple[int, int]]
) -> tuple[NewArtifact, ...]:
    """Files created or rewritten between two snapshots."""
    return tuple(
        NewArtifact(path=rel, media_type=media_type_for(rel))
        for rel in sorted(after)
        if before.get(rel) != after[rel]
    )
