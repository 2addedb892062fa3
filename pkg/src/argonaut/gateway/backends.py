"""Backends: scripted test double, JSONL cassette recording and replay.

Every backend exposes ``complete(request) -> ChatResponse`` and
``supports_vision(model_tag) -> bool``; the scripted backend is the
deterministic stand-in that makes the rest of the system testable offline.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Protocol

from .digest import digest
from .types import ChatRequest, ChatResponse, NoMatchingScript, ProviderUnreachable, Usage


class Backend(Protocol):
    def complete(self, request: ChatRequest) -> ChatResponse: ...

    def supports_vision(self, model_tag: str) -> bool: ...


@dataclass
class ScriptRule:
    """First-match-wins response rule.

    ``match`` substrings must all occur in the concatenated message text
    (restricted to ``role`` when given). ``consume_once`` rules fire at most
    once and are skipped afterwards.
    """

    match: tuple[str, ...]
    response: ChatResponse
    role: str | None = None
    consume_once: bool = False
    consumed: bool = field(default=False, compare=False)

    def matches(self, request: ChatRequest) -> bool:
        if self.consumed:
            return False
        haystack = request.combined_text(self.role)
        return all(needle in haystack for needle in self.match)


class ScriptedBackend:
    """Pure function of (registered rules, request), modulo consume_once."""

    provider_id = "scripted"

    def __init__(self, rules: list[ScriptRule] | None = None, vision_tags: set[str] | None = None):
        self._rules: list[ScriptRule] = list(rules or [])
        self._vision_tags = vision_tags  # None means every tag is vision-capable
        self._lock = threading.Lock()

    def add_rule(self, *match: str, text: str = "", structured: Any = None,
                 role: str | None = None, consume_once: bool = False) -> ScriptRule:
        if structured is not None and not text:
            text = json.dumps(structured, sort_keys=True)
        rule = ScriptRule(
            match=tuple(match),
            response=ChatResponse(text=text, structured=structured, provider_id=self.provider_id),
            role=role,
            consume_once=consume_once,
        )
        self._rules.append(rule)
        return rule

    def supports_vision(self, model_tag: str) -> bool:
        return self._vision_tags is None or model_tag in self._vision_tags

    def complete(self, request: ChatRequest) -> ChatResponse:
        with self._lock:
            for rule in self._rules:
                if rule.matches(request):
                    if rule.consume_once:
                        rule.consumed = True
                    return rule.response
        head = request.combined_text()[:200]
        raise NoMatchingScript(f"no scripted rule matched request starting: {head!r}")


def _response_to_json(response: ChatResponse) -> dict[str, Any]:
    return {
        "text": response.text,
        "structured": response.structured,
        "usage": {"input_tokens": response.usage.input_tokens,
                  "output_tokens": response.usage.output_tokens},
        "provider_id": response.provider_id,
    }


def _response_from_json(doc: dict[str, Any]) -> ChatResponse:
    usage = doc.get("usage") or {}
    return ChatResponse(
        text=doc["text"],
        structured=doc.get("structured"),
        usage=Usage(usage.get("input_tokens", 0), usage.get("output_tokens", 0)),
        provider_id=doc.get("provider_id", "unknown"),
    )


class RecordingBackend:
    """Wraps another backend and appends (digest, summary, response) records.

    One cassette file per session, newline-delimited JSON: diff-friendly.
    """

    def __init__(self, inner: Backend, cassette_path: str | Path):
        self._inner = inner
        self._path = Path(cassette_path)
        self._lock = threading.Lock()

    def supports_vision(self, model_tag: str) -> bool:
        return self._inner.supports_vision(model_tag)

    def complete(self, request: ChatRequest) -> ChatResponse:
        response = self._inner.complete(request)
        record = {
            "digest": digest(request),
            "request_summary": request.combined_text()[:120],
            "response": _response_to_json(response),
        }
        line = json.dumps(record, sort_keys=True, ensure_ascii=False)
        with self._lock:
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
        return response


class ReplayBackend:
    """Serves previously recorded responses; FIFO per digest.

    A digest with no remaining recorded responses is a missing-fixture error,
    reported as a :class:`ProviderUnreachable` naming the digest.
    """

    provider_id = "replay"

    def __init__(self, cassette_path: str | Path):
        self._queues: dict[str, list[ChatResponse]] = {}
        self._lock = threading.Lock()
        path = Path(cassette_path)
        if path.exists():
            for line in path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                record = json.loads(line)
                self._queues.setdefault(record["digest"], []).append(
                    _response_from_json(record["response"])
                )

    def supports_vision(self, model_tag: str) -> bool:
        return True

    def complete(self, request: ChatRequest) -> ChatResponse:
        key = digest(request)
        with self._lock:
            queue = self._queues.get(key)
            if not queue:
                raise ProviderUnreachable(f"no recorded response for request digest {key}")
            return queue.pop(0)


def load_script_rules(path: str | Path) -> list[ScriptRule]:
    """Load scripted-backend rules from a JSONL fixture file.

    Each line: {"match": [...], "role"?: str, "consume_once"?: bool,
    "text"?: str, "structured"?: any}.
    """
    rules: list[ScriptRule] = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}:{lineno}: bad script rule: {exc}") from exc
        structured = doc.get("structured")
        text = doc.get("text", "")
        if structured is not None and not text:
            text = json.dumps(structured, sort_keys=True)
        rules.append(
            ScriptRule(
                match=tuple(doc["match"]),
                response=ChatResponse(text=text, structured=structured, provider_id="scripted"),
                role=doc.get("role"),
                consume_once=bool(doc.get("consume_once", False)),
            )
        )
    return rules
