"""Per-session append-only event log with replayable sequence numbers."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable

EVENT_KINDS = (
    "plan", "agent_action", "code_submitted", "execution_result", "critique",
    "figure", "search_results", "report", "error", "turn_done",
)

DETERMINISTIC_BASE = datetime(2000, 1, 1, tzinfo=timezone.utc)

Clock = Callable[[int], str]


def wall_clock(seq: int) -> str:
    return datetime.now(timezone.utc).isoformat()


def deterministic_clock(seq: int) -> str:
    """Logical clock: replayed sessions produce byte-identical logs."""
    return (DETERMINISTIC_BASE + timedelta(seconds=seq)).isoformat()


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    kind: str
    payload: dict
    at: str

    def to_json(self) -> dict:
        return {"seq": self.seq, "kind": self.kind, "payload": self.payload, "at": self.at}

    @classmethod
    def from_json(cls, doc: dict) -> "SessionEvent":
        return cls(seq=doc["seq"], kind=doc["kind"], payload=doc["payload"], at=doc["at"])


class EventLog:
    """Append-only, strictly sequential per session; persisted as JSONL."""

    def __init__(self, path: str | Path, clock: Clock = wall_clock):
        self._path = Path(path)
        self._clock = clock
        self._events: list[SessionEvent] = []
        self._cond = threading.Condition()
        if self._path.exists():
            for line in self._path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    self._events.append(SessionEvent.from_json(json.loads(line)))

    def append(self, kind: str, payload: dict) -> SessionEvent:
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {kind!r}")
        with self._cond:
            event = SessionEvent(
                seq=len(self._events) + 1, kind=kind, payload=payload,
                at=self._clock(len(self._events) + 1),
            )
            self._events.append(event)
            line = json.dumps(event.to_json(), sort_keys=True, ensure_ascii=False)
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
            self._cond.notify_all()
            return event

    def __len__(self) -> int:
        with self._cond:
            return len(self._events)

    def since(self, from_seq: int) -> list[SessionEvent]:
        with self._cond:
            return [e for e in self._events if e.seq >= from_seq]

    def wait_beyond(self, seq: int, timeout: float) -> list[SessionEvent]:
        """Events with seq > ``seq``, blocking up to ``timeout`` for new ones."""
        with self._cond:
            if not self._cond.wait_for(lambda: len(self._events) > seq, timeout=timeout):
                return []
            return [e for e in self._events if e.seq > seq]

    def raw_bytes(self) -> bytes:
        return self._path.read_bytes() if self._path.exists() else b""
