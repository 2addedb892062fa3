"""Interactive code-execution worker.

Speaks the kernel wire protocol on stdio (UTF-8, one JSON message per line):
handshake {op:"hello", protocol:1, workspace}, then exec requests
{id, op:"exec", code, timeout_s} answered by
{id, status, stdout, stderr, traceback?, bindings, duration_ms},
until shutdown {op:"bye"}.

The interpreter namespace persists across submissions; the working directory
is pinned to the session workspace and write access outside it is blocked via
an audit hook. A trailing expression is echoed like an interactive prompt
would, so "x=1" followed by "x+1" prints 2.
"""

from __future__ import annotations

import ast
import io
import json
import os
import signal
import sys
import time
import traceback as tb_module
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

PROTOCOL_VERSION = 1

_WRITE_FLAGS = os.O_WRONLY | os.O_RDWR | os.O_APPEND | os.O_CREAT | os.O_TRUNC


class _Confinement:
    """Audit-hook state: blocks write-mode opens outside the workspace."""

    def __init__(self) -> None:
        self.workspace: Path | None = None
        self.active = False
        self.installed = False

    def install(self) -> None:
        if not self.installed:
            sys.addaudithook(self._hook)
            self.installed = True

    def _hook(self, event: str, args) -> None:
        if not self.active or self.workspace is None:
            return
        if event != "open":
            return
        path, mode, flags = args
        if path is None or isinstance(path, int):
            return
        writing = False
        if isinstance(mode, str):
            writing = any(ch in mode for ch in "wax+")
        elif flags is not None:
            writing = bool(flags & _WRITE_FLAGS)
        if not writing:
            return
        target = Path(os.path.realpath(os.fspath(path)))
        if not target.is_relative_to(self.workspace):
            raise PermissionError(
                f"write outside session workspace blocked: {os.fspath(path)}"
            )


_CONFINEMENT = _Confinement()


class _SubmissionTimeout(Exception):
    pass


def _alarm_handler(signum, frame):
    raise _SubmissionTimeout("submission timed out")


def _structured_traceback(exc: BaseException) -> dict:
    frames = []
    for frame in tb_module.extract_tb(exc.__traceback__):
        if frame.filename == __file__:
            continue  # worker plumbing frames are noise to the repair loop
        frames.append({
            "file": frame.filename,
            "line": frame.lineno or 0,
            "code_line": frame.line or "",
        })
    return {
        "exception_type": type(exc).__name__,
        "message": str(exc),
        "frames": frames,
    }


def _split_trailing_expression(code: str):
    """(body_ast, trailing_expr_ast | None), REPL-style echo of the last line."""
    tree = ast.parse(code, mode="exec")
    if tree.body and isinstance(tree.body[-1], ast.Expr):
        trailing = ast.Expression(tree.body[-1].value)
        body = ast.Module(body=tree.body[:-1], type_ignores=[])
        return body, trailing
    return tree, None


class WorkerState:
    def __init__(self, workspace: Path):
        self.workspace = workspace
        self.namespace: dict = {"__name__": "__main__"}
        self.submission_count = 0

    def execute(self, code: str, timeout_s: float) -> dict:
        self.submission_count += 1
        out, err = io.StringIO(), io.StringIO()
        started = time.perf_counter()
        status = "ok"
        traceback_doc = None
        before = set(self.namespace)

        _CONFINEMENT.active = True
        if timeout_s and timeout_s > 0:
            signal.signal(signal.SIGALRM, _alarm_handler)
            signal.setitimer(signal.ITIMER_REAL, timeout_s)
        try:
            with redirect_stdout(out), redirect_stderr(err):
                body, trailing = _split_trailing_expression(code)
                exec(compile(body, "<session>", "exec"), self.namespace)
                if trailing is not None:
                    value = eval(compile(trailing, "<session>", "eval"), self.namespace)
                    if value is not None:
                        print(repr(value), file=out)
        except _SubmissionTimeout:
            status = "error"
            traceback_doc = {
                "exception_type": "Timeout",
                "message": f"execution exceeded {timeout_s} s",
                "frames": [],
            }
        except BaseException as exc:  # noqa: BLE001 - everything becomes a reply
            status = "error"
            traceback_doc = _structured_traceback(exc)
        finally:
            if timeout_s and timeout_s > 0:
                signal.setitimer(signal.ITIMER_REAL, 0)
            _CONFINEMENT.active = False

        bindings = sorted(
            name for name in set(self.namespace) - before if not name.startswith("__")
        )
        return {
            "status": status,
            "stdout": out.getvalue(),
            "stderr": err.getvalue(),
            "traceback": traceback_doc,
            "bindings": bindings,
            "duration_ms": (time.perf_counter() - started) * 1000.0,
        }


def _error_reply(req_id, message: str) -> dict:
    return {
        "id": req_id,
        "status": "error",
        "stdout": "",
        "stderr": "",
        "traceback": {"exception_type": "ProtocolViolation", "message": message,
                      "frames": []},
        "bindings": [],
        "duration_ms": 0.0,
    }


def serve(stdin=None, stdout=None) -> None:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout

    def send(doc: dict) -> None:
        stdout.write(json.dumps(doc) + "\n")
        stdout.flush()

    state: WorkerState | None = None
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError:
            send(_error_reply(None, "message is not valid JSON"))
            continue
        op = doc.get("op")
        if op == "hello":
            if doc.get("protocol") != PROTOCOL_VERSION:
                send(_error_reply(None, f"unsupported protocol {doc.get('protocol')}"))
                continue
            workspace = Path(doc["workspace"]).resolve()
            os.chdir(workspace)
            _CONFINEMENT.workspace = workspace
            _CONFINEMENT.install()
            state = WorkerState(workspace)
            send({"op": "hello", "protocol": PROTOCOL_VERSION, "workspace": str(workspace)})
        elif op == "bye":
            return
        elif op == "exec":
            if state is None:
                send(_error_reply(doc.get("id"), "exec before handshake"))
                continue
            reply = state.execute(doc.get("code", ""), float(doc.get("timeout_s", 0)))
            reply["id"] = doc.get("id")
            send(reply)
        else:
            send(_error_reply(doc.get("id"), f"unknown op {op!r}"))


def main() -> None:
    serve()


if __name__ == "__main__":
    main()
