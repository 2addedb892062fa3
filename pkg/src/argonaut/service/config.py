"""Service configuration: backends, fixtures, caps, thresholds."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..sandbox import ScriptedReply, StructuredTraceback
from ..search import SearchConfig


@dataclass
class ServiceConfig:
    sessions_root: Path
    catalog_path: Path | None = None
    script_path: Path | None = None  # scripted model rules (JSONL)
    kernel_script_path: Path | None = None  # scripted kernel replies (JSONL)
    kernel_command: list[str] | None = None  # real worker command; None = scripted
    cassette_path: Path | None = None  # replay backend instead of scripted
    record_cassettes: bool = False
    provider_url: str | None = None  # live chat endpoint (keys come from env)
    provider_vision_tags: list[str] | None = None
    deterministic_clock: bool = False
    iteration_cap: int = 20
    repair_budget: int = 3
    qc_threshold: int = 8
    search: SearchConfig = field(default_factory=SearchConfig)

    @classmethod
    def from_file(cls, path: str | Path) -> "ServiceConfig":
        doc = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        base = Path(path).parent

        def respath(key):
            raw = doc.get(key)
            if raw is None:
                return None
            p = Path(raw)
            return p if p.is_absolute() else base / p

        search_doc = doc.get("search", {})
        return cls(
            sessions_root=respath("sessions_root") or base / "sessions",
            catalog_path=respath("catalog"),
            script_path=respath("script"),
            kernel_script_path=respath("kernel_script"),
            kernel_command=doc.get("kernel_command"),
            cassette_path=respath("cassette"),
            record_cassettes=bool(doc.get("record_cassettes", False)),
            provider_url=doc.get("provider_url"),
            provider_vision_tags=doc.get("provider_vision_tags"),
            deterministic_clock=bool(doc.get("deterministic_clock", False)),
            iteration_cap=int(doc.get("iteration_cap", 20)),
            repair_budget=int(doc.get("repair_budget", 3)),
            qc_threshold=int(doc.get("qc_threshold", 8)),
            search=SearchConfig(
                max_rounds=int(search_doc.get("max_rounds", 3)),
                cap=int(search_doc.get("cap", 24)),
                top_k=int(search_doc.get("top_k", 5)),
            ),
        )


def load_kernel_script(path: str | Path) -> list[ScriptedReply]:
    """Scripted-kernel reply table from a JSONL fixture."""
    replies = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        doc = json.loads(line)
        tb = doc.get("traceback")
        replies.append(ScriptedReply(
            status=doc.get("status", "ok"),
            stdout=doc.get("stdout", ""),
            stderr=doc.get("stderr", ""),
            traceback=StructuredTraceback.from_json(tb) if tb else None,
            bindings=tuple(doc.get("bindings", [])),
            writes={k: v for k, v in doc.get("writes", {}).items()},
            sleep_s=float(doc.get("sleep_s", 0.0)),
        ))
    return replies
