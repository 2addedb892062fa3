"""Protocol conformance (acceptance A10): the supervision-side kernel suite
run against the real worker process instead of the scripted double."""

from __future__ import annotations

import sys
import time

import pytest

from argonaut.sandbox import KernelDead, ProcessKernel, create_session, execute

WORKER_CMD = [sys.executable, "-m", "argonaut_worker"]


@pytest.fixture()
def kernel(tmp_path):
    workspace, handle = create_session(
        tmp_path, lambda ws: ProcessKernel(WORKER_CMD, ws)
    )
    yield handle
    handle.close()


class TestHandshake:
    def test_two_sessions_distinct_workspaces(self, tmp_path):
        ws1, k1 = create_session(tmp_path, lambda ws: ProcessKernel(WORKER_CMD, ws))
        ws2, k2 = create_session(tmp_path, lambda ws: ProcessKernel(WORKER_CMD, ws))
        try:
            assert ws1.session_id != ws2.session_id
            r1 = execute(k1, "import os; print(os.getcwd())")
            r2 = execute(k2, "import os; print(os.getcwd())")
            assert r1.stdout.strip() == str(ws1.root_path.resolve())
            assert r2.stdout.strip() == str(ws2.root_path.resolve())
        finally:
            k1.close()
            k2.close()


class TestStatePersistence:
    def test_x_equals_one_then_x_plus_one(self, kernel):
        first = execute(kernel, "x = 1")
        assert first.ok
        assert "x" in first.declared_bindings
        second = execute(kernel, "x + 1")
        assert second.ok
        assert second.stdout.strip() == "2"

    def test_imports_and_functions_survive(self, kernel):
        assert execute(kernel, "import math\ndef area(r):\n    return math.pi * r * r").ok
        result = execute(kernel, "print(round(area(2), 3))")
        assert result.stdout.strip() == "12.566"

    def test_bindings_are_new_top_level_names_only(self, kernel):
        execute(kernel, "a = 1")
        result = execute(kernel, "a = 2\nb = 3")
        assert result.declared_bindings == ("b",)


class TestStructuredTracebacks:
    def test_exception_type_and_message(self, kernel):
        result = execute(kernel, "1 / 0")
        assert result.status == "error"
        assert result.traceback.exception_type == "ZeroDivisionError"
        assert "division" in result.traceback.message

    def test_frames_point_at_session_code(self, kernel):
        result = execute(kernel, "def boom():\n    raise ValueError('inner')\nboom()")
        assert result.traceback.exception_type == "ValueError"
        assert len(result.traceback.frames) >= 1
        assert all(f.file == "<session>" for f in result.traceback.frames)

    def test_error_leaves_kernel_usable(self, kernel):
        execute(kernel, "raise RuntimeError('once')")
        assert execute(kernel, "print('still alive')").stdout.strip() == "still alive"


class TestArtifactsAndConfinement:
    def test_workspace_write_reported_as_artifact(self, kernel):
        result = execute(
            kernel,
            "with open('figure.png', 'wb') as fh:\n    fh.write(b'\\x89PNG fake')",
        )
        assert result.ok
        assert [a.path for a in result.new_artifacts] == ["figure.png"]
        assert result.new_artifacts[0].media_type == "image/png"

    def test_nested_directories_allowed(self, kernel):
        result = execute(
            kernel,
            "import os\nos.makedirs('out', exist_ok=True)\n"
            "open('out/table.csv', 'w').write('a,b\\n')",
        )
        assert result.ok
        assert [a.path for a in result.new_artifacts] == ["out/table.csv"]

    def test_write_outside_workspace_blocked(self, kernel, tmp_path):
        escape = tmp_path / "escape.txt"
        result = execute(kernel, f"open({str(escape)!r}, 'w').write('leak')")
        assert result.status == "error"
        assert result.traceback.exception_type == "PermissionError"
        assert not escape.exists()

    def test_relative_escape_blocked(self, kernel):
        result = execute(kernel, "open('../escape.txt', 'w').write('leak')")
        assert result.status == "error"
        assert result.traceback.exception_type == "PermissionError"

    def test_reads_outside_workspace_allowed(self, kernel):
        result = execute(kernel, "print(len(open('/etc/hostname').read()) >= 0)")
        assert result.ok


class TestProtocolDiscipline:
    def test_one_reply_per_request_ids_echoed(self, kernel):
        for expected_id in range(2, 6):  # id 1 was the handshake... exec ids
            result = kernel.run(f"print({expected_id})", timeout_s=10)
            assert result.stdout.strip() == str(expected_id)

    def test_timeout_returns_error_result(self, kernel):
        started = time.monotonic()
        result = execute(kernel, "import time\ntime.sleep(30)", timeout_s=1.0)
        elapsed = time.monotonic() - started
        assert result.status == "error"
        assert result.traceback.exception_type in ("Timeout", "TimeoutError")
        assert elapsed < 10.0

    def test_stdout_and_stderr_separated(self, kernel):
        result = execute(
            kernel, "import sys\nprint('to out')\nprint('to err', file=sys.stderr)"
        )
        assert result.stdout.strip() == "to out"
        assert result.stderr.strip() == "to err"

    def test_shutdown_is_clean(self, tmp_path):
        workspace, handle = create_session(
            tmp_path, lambda ws: ProcessKernel(WORKER_CMD, ws)
        )
        assert execute(handle, "print('hi')").ok
        handle.close()
        assert handle.state == "dead"
        with pytest.raises(KernelDead):
            handle.run("print('after close')", timeout_s=5)


class TestScriptedDoubleAgreement:
    """Where behavior overlaps, the real worker matches the scripted kernel."""

    def test_result_shape_matches(self, kernel, tmp_path):
        from argonaut.sandbox import ScriptedKernel, ScriptedReply

        scripted = ScriptedKernel(
            [ScriptedReply(stdout="7\n", bindings=("y",))], tmp_path / "double"
        )
        (tmp_path / "double").mkdir()
        real = execute(kernel, "y = 7\nprint(y)")
        fake = execute(scripted, "y = 7\nprint(y)")
        assert (real.status, real.stdout, real.declared_bindings) == \
            (fake.status, fake.stdout, fake.declared_bindings)

    def test_repair_loop_drives_real_worker(self, kernel):
        from argonaut.gateway import ScriptedBackend
        from argonaut.sandbox import repair_loop

        llm = ScriptedBackend()
        llm.add_rule("Traceback", text="```python\nprint(value)\n```")
        llm.add_rule("You are the", text="```python\nprint(undefined_name)\n```")
        secondary = ScriptedBackend()
        secondary.add_rule("exhausted its repair attempts",
                           text="```python\nvalue = 42\nprint(value)\n```")
        outcome = repair_loop("print a value", "dataframe", kernel, llm, secondary,
                              budget=3)
        # the primary keeps producing NameErrors against the real kernel; the
        # escalation fix then executes successfully
        assert outcome.status == "escalated"
        assert outcome.result.stdout.strip() == "42"
        assert outcome.context.attempts[0].result.traceback.exception_type == "NameError"
