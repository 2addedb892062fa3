"""The one entry point every module calls to talk to a model."""

from __future__ import annotations

import json
from typing import Any

import jsonschema

from .backends import Backend
from .types import ChatRequest, ChatResponse, SchemaViolation


def _parse_structured(text: str, schema: dict[str, Any]) -> Any:
    """Parse model text as JSON conforming to ``schema``.

    Tolerates a fenced ```json block or surrounding prose around the first
    top-level JSON object/array.
    """
    candidates = [text.strip()]
    start = text.find("{")
    end = text.rfind("}")
    if start != -1 and end > start:
        candidates.append(text[start : end + 1])
    start = text.find("[")
    end = text.rfind("]")
    if start != -1 and end > start:
        candidates.append(text[start : end + 1])

    last_error: Exception | None = None
    for candidate in candidates:
        try:
            value = json.loads(candidate)
        except json.JSONDecodeError as exc:
            last_error = exc
            continue
        jsonschema.validate(value, schema)  # raises ValidationError on mismatch
        return value
    raise last_error if last_error is not None else ValueError("empty response text")


def complete(request: ChatRequest, backend: Backend) -> ChatResponse:
    """Run one chat completion, enforcing the structured-output contract.

    When ``request.response_schema`` is set and the provider's reply does not
    parse/validate, the request is re-issued once with the parse error
    appended; a second failure raises :class:`SchemaViolation`. Providers are
    never trusted to have honored the schema - validation always happens here.
    """
    if request.has_images() and not backend.supports_vision(request.model_tag):
        raise ValueError(f"model {request.model_tag!r} does not advertise vision capability")

    response = backend.complete(request)
    if request.response_schema is None:
        return response

    schema = request.response_schema
    if response.structured is not None:
        try:
            jsonschema.validate(response.structured, schema)
            return response
        except jsonschema.ValidationError:
            pass  # fall through to text parsing / re-prompt

    try:
        value = _parse_structured(response.text, schema)
        return ChatResponse(
            text=response.text, structured=value, usage=response.usage,
            provider_id=response.provider_id,
        )
    except Exception as first_error:
        retry = request.with_followup(
            assistant_text=response.text,
            user_text=(
                "Your previous reply did not match the required schema "
                f"({first_error}). Respond again with only valid JSON."
            ),
        )
        second = backend.complete(retry)
        try:
            value = _parse_structured(second.text, schema)
        except Exception as second_error:
            raise SchemaViolation(
                f"structured output failed twice: {first_error}; then: {second_error}"
            ) from second_error
        return ChatResponse(
            text=second.text, structured=value, usage=second.usage,
            provider_id=second.provider_id,
        )
