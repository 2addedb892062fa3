"""Chat-completion request/response types shared by every model backend."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

ROLES = frozenset({"system", "user", "assistant", "tool"})


class GatewayError(Exception):
    """Base class for gateway failures."""


class NoMatchingScript(GatewayError):
    """Scripted backend had no rule for a request - a test-fixture gap."""


class ProviderUnreachable(GatewayError):
    """Backend could not serve the request (network, missing cassette entry)."""


class SchemaViolation(GatewayError):
    """Structured output failed to parse/validate, even after one re-prompt."""


@dataclass(frozen=True)
class TextPart:
    text: str


@dataclass(frozen=True)
class ImagePart:
    data: bytes
    media_type: str


Part = TextPart | ImagePart


@dataclass(frozen=True)
class Message:
    role: str
    parts: tuple[Part, ...]

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")

    @classmethod
    def text(cls, role: str, text: str) -> "Message":
        return cls(role=role, parts=(TextPart(text),))

    def text_content(self) -> str:
        return "\n".join(p.text for p in self.parts if isinstance(p, TextPart))

    def has_images(self) -> bool:
        return any(isinstance(p, ImagePart) for p in self.parts)


@dataclass(frozen=True)
class ChatRequest:
    """A single chat-completion call.

    ``response_schema`` is a JSON-Schema dict; when present, the caller wants
    the reply parsed and validated against it.
    """

    model_tag: str
    messages: tuple[Message, ...]
    temperature: float = 0.0
    max_output_tokens: int = 1024
    response_schema: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if not self.messages:
            raise ValueError("messages must be non-empty")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError("temperature must be in [0, 2]")
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")

    def combined_text(self, role: str | None = None) -> str:
        """Concatenated text of all (optionally role-filtered) messages."""
        msgs = self.messages if role is None else [m for m in self.messages if m.role == role]
        return "\n".join(m.text_content() for m in msgs)

    def has_images(self) -> bool:
        return any(m.has_images() for m in self.messages)

    def with_followup(self, assistant_text: str, user_text: str) -> "ChatRequest":
        """Copy of this request with an assistant/user exchange appended."""
        extra = (Message.text("assistant", assistant_text), Message.text("user", user_text))
        return ChatRequest(
            model_tag=self.model_tag,
            messages=self.messages + extra,
            temperature=self.temperature,
            max_output_tokens=self.max_output_tokens,
            response_schema=self.response_schema,
        )


@dataclass(frozen=True)
class Usage:
    input_tokens: int = 0
    output_tokens: int = 0


@dataclass(frozen=True)
class ChatResponse:
    text: str
    structured: Any = None
    usage: Usage = field(default_factory=Usage)
    provider_id: str = "unknown"
