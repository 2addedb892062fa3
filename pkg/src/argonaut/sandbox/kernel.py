"""Kernel handles: the scripted test double and the wire-protocol client.

Wire protocol (UTF-8, one JSON message per line, no length prefix):
  handshake  {op: "hello", protocol: 1, workspace}
  request    {id, op: "exec", code, timeout_s}
  reply      {id, status, stdout, stderr, traceback?, bindings[], duration_ms}
  shutdown   {op: "bye"}
"""

from __future__ import annotations

import json
import queue
import subprocess
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

from .execution import (
    ExecutionResult,
    KernelDead,
    SpawnFailure,
    StructuredTraceback,
    diff_artifacts,
    scan_workspace,
)

PROTOCOL_VERSION = 1
DEFAULT_TIMEOUT_S = 120.0
KILL_GRACE_S = 5.0


class KernelHandle(Protocol):
    workspace_root: Path
    state: str  # live | dead

    def run(self, code: str, timeout_s: float) -> ExecutionResult: ...

    def close(self) -> None: ...


def timeout_result(timeout_s: float) -> ExecutionResult:
    return ExecutionResult(
        status="error",
        traceback=StructuredTraceback(
            exception_type="Timeout",
            message=f"execution exceeded {timeout_s} s",
        ),
        duration_ms=timeout_s * 1000.0,
    )


@dataclass
class ScriptedReply:
    """One table entry of the scripted kernel, keyed by submission index."""

    status: str = "ok"
    stdout: str = ""
    stderr: str = ""
    traceback: StructuredTraceback | None = None
    bindings: tuple[str, ...] = ()
    writes: dict[str, bytes | str] = field(default_factory=dict)
    sleep_s: float = 0.0  # simulate a long-running submission

    @classmethod
    def error(cls, exception_type: str, message: str = "", **kw) -> "ScriptedReply":
        return cls(
            status="error",
            traceback=StructuredTraceback(exception_type=exception_type, message=message),
            **kw,
        )


class ScriptedKernel:
    """Table-driven worker double: reply ``i`` answers submission ``i``.

    Entries may write files into the workspace so the supervision-side
    artifact scan sees real new files. Submissions are serialized by a lock,
    matching the one-kernel-per-session contract.
    """

    def __init__(self, replies: list[ScriptedReply], workspace_root: str | Path,
                 default: ScriptedReply | None = None):
        self.workspace_root = Path(workspace_root)
        self.state = "live"
        self._replies = list(replies)
        self._default = default
        self._index = 0
        self._lock = threading.Lock()
        self.submissions: list[str] = []

    @property
    def executions(self) -> int:
        return len(self.submissions)

    def run(self, code: str, timeout_s: float = DEFAULT_TIMEOUT_S) -> ExecutionResult:
        if self.state != "live":
            raise KernelDead("scripted kernel closed")
        with self._lock:
            self.submissions.append(code)
            if self._index < len(self._replies):
                reply = self._replies[self._index]
                self._index += 1
            elif self._default is not None:
                reply = self._default
            else:
                raise AssertionError(
                    f"scripted kernel table exhausted after {len(self._replies)} submissions"
                )
            if reply.sleep_s > 0:
                time.sleep(reply.sleep_s)
            for rel, content in reply.writes.items():
                target = self.workspace_root / rel
                target.parent.mkdir(parents=True, exist_ok=True)
                if isinstance(content, bytes):
                    target.write_bytes(content)
                else:
                    target.write_text(content, encoding="utf-8")
            return ExecutionResult(
                status=reply.status,
                stdout=reply.stdout,
                stderr=reply.stderr,
                traceback=reply.traceback,
                declared_bindings=reply.bindings,
                duration_ms=1.0,
            )

    def close(self) -> None:
        self.state = "dead"


class ProcessKernel:
    """Client for a real worker process speaking the wire protocol on stdio."""

    def __init__(self, command: list[str], workspace_root: str | Path):
        self.workspace_root = Path(workspace_root)
        self.state = "live"
        self._lock = threading.Lock()
        self._next_id = 0
        try:
            self._proc = subprocess.Popen(
                command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                cwd=str(self.workspace_root),
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise SpawnFailure(f"cannot start worker {command!r}: {exc}") from exc
        self._lines: queue.Queue[str | None] = queue.Queue()
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()
        self._send({"op": "hello", "protocol": PROTOCOL_VERSION,
                    "workspace": str(self.workspace_root)})
        hello = self._recv(timeout_s=30.0)
        if hello is None or hello.get("op") != "hello":
            self._kill()
            raise SpawnFailure(f"worker handshake failed: {hello!r}")

    def _read_loop(self) -> None:
        assert self._proc.stdout is not None
        for line in self._proc.stdout:
            self._lines.put(line)
        self._lines.put(None)  # EOF marker

    def _send(self, doc: dict) -> None:
        if self._proc.stdin is None or self._proc.poll() is not None:
            raise KernelDead("worker process exited")
        try:
            self._proc.stdin.write(json.dumps(doc) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, ValueError) as exc:
            self.state = "dead"
            raise KernelDead("worker stdin closed") from exc

    def _recv(self, timeout_s: float) -> dict | None:
        deadline = time.monotonic() + timeout_s
        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                return None
            try:
                line = self._lines.get(timeout=remaining)
            except queue.Empty:
                return None
            if line is None:
                self.state = "dead"
                raise KernelDead("worker connection lost")
            line = line.strip()
            if line:
                return json.loads(line)

    def run(self, code: str, timeout_s: float = DEFAULT_TIMEOUT_S) -> ExecutionResult:
        if self.state != "live":
            raise KernelDead("kernel not live")
        with self._lock:
            self._next_id += 1
            req_id = self._next_id
            self._send({"id": req_id, "op": "exec", "code": code, "timeout_s": timeout_s})
            while True:
                reply = self._recv(timeout_s=timeout_s + KILL_GRACE_S)
                if reply is None:
                    self._kill()
                    return timeout_result(timeout_s)
                if reply.get("id") != req_id:
                    continue  # stale reply from an abandoned submission
                tb = reply.get("traceback")
                return ExecutionResult(
                    status=reply["status"],
                    stdout=reply.get("stdout", ""),
                    stderr=reply.get("stderr", ""),
                    traceback=StructuredTraceback.from_json(tb) if tb else None,
                    declared_bindings=tuple(reply.get("bindings", [])),
                    duration_ms=float(reply.get("duration_ms", 0.0)),
                )

    def _kill(self) -> None:
        self.state = "dead"
        if self._proc.poll() is None:
            self._proc.kill()

    def close(self) -> None:
        if self.state == "live":
            try:
                self._send({"op": "bye"})
                self._proc.wait(timeout=5.0)
            except (KernelDead, subprocess.TimeoutExpired):
                self._kill()
        self.state = "dead"


def execute(kernel: KernelHandle, code: str, timeout_s: float = DEFAULT_TIMEOUT_S) -> ExecutionResult:
    """Run one submission and attach workspace-diff artifacts to the result."""
    before = scan_workspace(kernel.workspace_root)
    result = kernel.run(code, timeout_s=timeout_s)
    after = scan_workspace(kernel.workspace_root)
    artifacts = diff_artifacts(before, after)
    if artifacts == result.new_artifacts:
        return result
    return ExecutionResult(
        status=result.status,
        stdout=result.stdout,
        stderr=result.stderr,
        traceback=result.traceback,
        new_artifacts=artifacts,
        declared_bindings=result.declared_bindings,
        duration_ms=result.duration_ms,
    )
