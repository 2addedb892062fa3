"""Stable request digests used as cassette keys."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .types import ChatRequest, ImagePart, TextPart


def _canonical_parts(msg_parts) -> list[dict[str, Any]]:
    out: list[dict[str, Any]] = []
    for part in msg_parts:
        if isinstance(part, TextPart):
            out.append({"text": part.text})
        elif isinstance(part, ImagePart):
            # Hash the bytes so the canonical form stays printable but any
            # single-byte change still flips the digest.
            out.append(
                {
                    "image_sha256": hashlib.sha256(part.data).hexdigest(),
                    "media_type": part.media_type,
                }
            )
        else:
            raise TypeError(f"unknown part type {type(part).__name__}")
    return out


def canonical_form(request: ChatRequest) -> str:
    """Canonical JSON serialization: key order and float formatting are fixed."""
    doc = {
        "model_tag": request.model_tag,
        "temperature": repr(float(request.temperature)),
        "max_output_tokens": request.max_output_tokens,
        "response_schema": request.response_schema,
        "messages": [
            {"role": m.role, "parts": _canonical_parts(m.parts)} for m in request.messages
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(request: ChatRequest) -> str:
    """Hex digest, stable across runs and platforms."""
    return hashlib.sha256(canonical_form(request).encode("utf-8")).hexdigest()
