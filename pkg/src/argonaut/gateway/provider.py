"""Minimal HTTP chat-completion provider client.

Credentials come from environment variables (GATEWAY_PRIMARY_KEY /
GATEWAY_SECONDARY_KEY); endpoint URLs come from service configuration. This
is the pluggable live-provider stub: the deterministic backends in
``backends.py`` are what every test path uses.
"""

from __future__ import annotations

import json
import os

import httpx

from .types import ChatRequest, ChatResponse, ImagePart, ProviderUnreachable, TextPart, Usage

PRIMARY_KEY_ENV = "GATEWAY_PRIMARY_KEY"
SECONDARY_KEY_ENV = "GATEWAY_SECONDARY_KEY"


def _wire_messages(request: ChatRequest) -> list[dict]:
    messages = []
    for message in request.messages:
        parts = []
        for part in message.parts:
            if isinstance(part, TextPart):
                parts.append({"type": "text", "text": part.text})
            elif isinstance(part, ImagePart):
                import base64

                parts.append({
                    "type": "image",
                    "media_type": part.media_type,
                    "data": base64.b64encode(part.data).decode("ascii"),
                })
        messages.append({"role": message.role, "content": parts})
    return messages


class HttpProviderBackend:
    """POSTs chat requests to a configured endpoint; vision per tag set."""

    def __init__(
        self,
        endpoint_url: str,
        key_env: str = PRIMARY_KEY_ENV,
        vision_tags: set[str] | None = None,
        transport: httpx.BaseTransport | None = None,
        timeout_s: float = 60.0,
    ):
        key = os.environ.get(key_env)
        if not key:
            raise ProviderUnreachable(f"credential env var {key_env} is not set")
        self._endpoint = endpoint_url
        self._key = key
        self._vision_tags = vision_tags
        self._client = httpx.Client(transport=transport, timeout=timeout_s)

    def supports_vision(self, model_tag: str) -> bool:
        return self._vision_tags is None or model_tag in self._vision_tags

    def complete(self, request: ChatRequest) -> ChatResponse:
        payload = {
            "model": request.model_tag,
            "temperature": request.temperature,
            "max_output_tokens": request.max_output_tokens,
            "messages": _wire_messages(request),
        }
        if request.response_schema is not None:
            payload["response_schema"] = request.response_schema
        try:
            response = self._client.post(
                self._endpoint,
                headers={"Authorization": f"Bearer {self._key}"},
                content=json.dumps(payload),
            )
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise ProviderUnreachable(f"provider call failed: {exc}") from exc
        doc = response.json()
        usage = doc.get("usage") or {}
        return ChatResponse(
            text=doc.get("text", ""),
            structured=doc.get("structured"),
            usage=Usage(int(usage.get("input_tokens", 0)), int(usage.get("output_tokens", 0))),
            provider_id=doc.get("provider_id", "http"),
        )
